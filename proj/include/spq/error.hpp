#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spq {

enum class Errc {
  NotAGroup,
  OrderCapExceeded,
  InvalidPermutation,
  UnknownSpec,
  NotASubgroupInclusion,
  NotNormal,
  NotAHomomorphism,
  ProductCapExceeded,
  NotAComplex,
  BasisCapExceeded,
  ChainNotInSubgroup,
  FiltrationViolation,
  ChainNotEndingAtTop,
  SizeCapExceeded,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::UnknownSpec: return "UnknownSpec";
    case Errc::NotASubgroupInclusion: return "NotASubgroupInclusion";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::ProductCapExceeded: return "ProductCapExceeded";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::BasisCapExceeded: return "BasisCapExceeded";
    case Errc::ChainNotInSubgroup: return "ChainNotInSubgroup";
    case Errc::FiltrationViolation: return "FiltrationViolation";
    case Errc::ChainNotEndingAtTop: return "ChainNotEndingAtTop";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// True for the errors raised when a configured size limit is hit.
inline bool is_cap_error(Errc c) {
  return c == Errc::OrderCapExceeded || c == Errc::ProductCapExceeded ||
         c == Errc::BasisCapExceeded || c == Errc::SizeCapExceeded;
}

/// Exception carrying an error code and, where meaningful, a witness
/// (a failing associativity triple, an offending column, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::size_t> witness_;
};

/// Configurable resource limits. Exceeding any of them raises, never truncates.
struct Limits {
  std::size_t order_cap = 512;
  std::size_t product_cap = std::size_t{1} << 16;
  std::size_t basis_cap = 20000;
  std::size_t gset_cap = 12;
};

}  // namespace spq
