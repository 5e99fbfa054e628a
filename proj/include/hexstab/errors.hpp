#pragma once

#include <stdexcept>
#include <string>

namespace hexstab {

class HexstabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |det J| fell below the size-scaled threshold.
class SingularJacobian : public HexstabError {
 public:
  using HexstabError::HexstabError;
};

/// Right Cauchy-Green tensor with I3 <= 0.
class NonPositiveDefinite : public HexstabError {
 public:
  using HexstabError::HexstabError;
};

/// Element with det J <= 0 (mesh) or det F <= 0 (deformed state).
class ElementInverted : public HexstabError {
 public:
  using HexstabError::HexstabError;
};

/// Linear solve failed: singular or indefinite reduced system.
class SolveFailure : public HexstabError {
 public:
  using HexstabError::HexstabError;
};

}  // namespace hexstab
