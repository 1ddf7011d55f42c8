#pragma once

#include <stdexcept>
#include <string>

namespace hgf {

// Input outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An element does not lie in the requested cyclotomic subfield.
class CoercionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A configured size bound was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgf
