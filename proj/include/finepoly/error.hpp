#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finepoly {

/// Failure categories surfaced by the library.
enum class Errc {
  ZeroVector,
  NonSquare,
  DimensionMismatch,
  NotFullDim,
  Unbounded,
  Infeasible,
  LatticeRequired,
  NotSpanning,
  InvalidArgument,
  Parse,
  Unsupported,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NonSquare: return "NonSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotFullDim: return "NotFullDim";
    case Errc::Unbounded: return "Unbounded";
    case Errc::Infeasible: return "Infeasible";
    case Errc::LatticeRequired: return "LatticeRequired";
    case Errc::NotSpanning: return "NotSpanning";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace finepoly
