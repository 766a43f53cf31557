#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stovex {

enum class Errc {
  OutOfRange,
  Degenerate,
  OutsideLiquidRegion,
  OutOfDomain,
  WindowExhausted,
  OutsideExactWindow,
  TooLarge,
  NotOnStochasticLine,
  DenominatorVanishes,
  QuadratureNotConverged,
  ContourFamilyInfeasible,
  ZetaOnCut,
  DivergentParameter,
  OutOfSupportedRange,
  OnBranchCut,
  IoError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace stovex
