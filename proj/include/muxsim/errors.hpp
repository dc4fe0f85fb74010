#pragma once

#include <stdexcept>

namespace muxsim {

// A parameter lies outside the domain of the model (negative mean photon
// number, efficiency outside [0, 1], ...).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Inputs have incompatible shapes or are not normalized.
class StructuralError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A computed quantity violated an invariant that must hold by construction.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace muxsim
