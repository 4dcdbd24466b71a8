#ifndef SATQUAD_ERROR_HPP
#define SATQUAD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace satquad {

enum class Errc {
  kInvalidArgument,
  kNonPrime,
  kOutOfRange,
  kDivisionByZero,
  kDegenerateSpan,
  kInvalidPair,
  kNotOnQuadric,
  kRepeatedPoint,
  kInvalidQuery,
  kConstructionStall,
  kAugmentationFailed,
  kOutOfRegion,
  kInapplicable,
  kOverflow,
  kDegenerateSet,
  kSizeLimit,
  kParse,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "invalid-argument";
    case Errc::kNonPrime: return "non-prime";
    case Errc::kOutOfRange: return "out-of-range";
    case Errc::kDivisionByZero: return "division-by-zero";
    case Errc::kDegenerateSpan: return "degenerate-span";
    case Errc::kInvalidPair: return "invalid-pair";
    case Errc::kNotOnQuadric: return "not-on-quadric";
    case Errc::kRepeatedPoint: return "repeated-point";
    case Errc::kInvalidQuery: return "invalid-query";
    case Errc::kConstructionStall: return "construction-stall";
    case Errc::kAugmentationFailed: return "augmentation-failed";
    case Errc::kOutOfRegion: return "out-of-region";
    case Errc::kInapplicable: return "proposition-inapplicable";
    case Errc::kOverflow: return "widen-arithmetic";
    case Errc::kDegenerateSet: return "degenerate-set";
    case Errc::kSizeLimit: return "size-limit";
    case Errc::kParse: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace satquad

#endif  // SATQUAD_ERROR_HPP
