#pragma once

#include <stdexcept>
#include <string>

namespace radpauli {

// Argument outside the documented domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numerical routine could not deliver its postcondition.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that makes an operation meaningless (no bound state, divergent
// integral, violated assumption on the field, ...).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace radpauli
