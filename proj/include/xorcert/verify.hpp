#pragma once

#include <string>
#include <vector>

#include "xorcert/generate.hpp"
#include "xorcert/pipeline.hpp"

namespace xorcert {

struct VerifyReport {
  bool ok = false;
  std::vector<std::string> failures;
};

/// Re-derives every claim of `cert` from `inst` without trusting the
/// producer: digests, the reduction and decomposition, the weight classes
/// and block list, each block norm (Cholesky check), the dual certificate
/// (PSD check), and all bound arithmetic. With `brute`, also checks the
/// exhaustive val against the certified bound; throws kPrecondition when
/// the instance exceeds the configured brute-force cap.
VerifyReport verify_certificate(const Certificate& cert, const AnyInstance& inst,
                                bool brute = false);

}  // namespace xorcert
