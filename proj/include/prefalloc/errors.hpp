#ifndef PREFALLOC_ERRORS_HPP
#define PREFALLOC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace prefalloc {

enum class ErrorCode {
  kCycleDetected,
  kDuplicateArc,
  kSelfLoop,
  kOutOfRangeItem,
  kInvalidAllocation,
  kInternalInconsistency,
  kPreconditionViolated,
  kInfeasibleCardinality,
  kNotSeriesParallel,
  kNotOutCactus,
  kNotPolytree,
  kNotOutTree,
  kNotOneWayBipartite,
  kDecompositionMismatch,
  kWidthExceeded,
  kUnsupported,
  kInstanceTooLarge,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prefalloc

#endif  // PREFALLOC_ERRORS_HPP
