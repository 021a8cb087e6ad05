#pragma once

#include <stdexcept>
#include <string>

namespace qdae {

/// Invalid or inconsistent configuration input (files, keys, identifiers).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input left the mathematical domain of an embedding, e.g. arcsin outside (-1, 1).
class ArcsinDomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A numeric procedure failed to produce a usable result (divergence, NaN).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qdae
