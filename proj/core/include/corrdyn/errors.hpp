#pragma once

#include <stdexcept>

namespace corrdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParameterError : Error { using Error::Error; };
struct BranchPointError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct InvalidPairError : Error { using Error::Error; };
struct DegenerateSampleError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct BranchCollapseError : Error { using Error::Error; };
struct ContinuationStuckError : Error { using Error::Error; };
struct InvalidAnnulusError : Error { using Error::Error; };
struct EmptyOrbitError : Error { using Error::Error; };
struct ShortOrbitError : Error { using Error::Error; };
struct DepthError : Error { using Error::Error; };
struct CapExceededError : Error { using Error::Error; };
struct ShortSequenceError : Error { using Error::Error; };
struct ShadowEscapeError : Error { using Error::Error; };
struct AmbiguousBranchError : Error { using Error::Error; };
struct InsufficientSamplesError : Error { using Error::Error; };
struct StarvationError : Error { using Error::Error; };
struct NoAttractorError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace corrdyn
