#pragma once

#include <stdexcept>
#include <string>

namespace dualent {

// Base for errors raised by domain operations (maps to CLI exit code 3).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both amplitudes of a pair state are zero.
struct ZeroState : DomainError {
    using DomainError::DomainError;
};

// Label variable and entangled variable share the same name.
struct VariableClash : DomainError {
    using DomainError::DomainError;
};

// An operator-position swap does not address two operators.
struct InvalidPositions : DomainError {
    using DomainError::DomainError;
};

// Two Fock expansions live over different mode sets.
struct ModeMismatch : DomainError {
    using DomainError::DomainError;
};

// A 4x4 operator violates the density-operator invariants beyond tolerance.
struct InvalidDensity : DomainError {
    using DomainError::DomainError;
};

// A state is not in the momentum/polarization pair form the protocol expects.
struct WrongStateShape : DomainError {
    using DomainError::DomainError;
};

// A coincidence record holds no detected pairs.
struct EmptyCounts : DomainError {
    using DomainError::DomainError;
};

// Invalid user-supplied configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dualent
