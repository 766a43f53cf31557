#include "stovex/errors.hpp"

namespace stovex {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Degenerate: return "Degenerate";
    case Errc::OutsideLiquidRegion: return "OutsideLiquidRegion";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::WindowExhausted: return "WindowExhausted";
    case Errc::OutsideExactWindow: return "OutsideExactWindow";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotOnStochasticLine: return "NotOnStochasticLine";
    case Errc::DenominatorVanishes: return "DenominatorVanishes";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::ContourFamilyInfeasible: return "ContourFamilyInfeasible";
    case Errc::ZetaOnCut: return "ZetaOnCut";
    case Errc::DivergentParameter: return "DivergentParameter";
    case Errc::OutOfSupportedRange: return "OutOfSupportedRange";
    case Errc::OnBranchCut: return "OnBranchCut";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace stovex
