#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumsetlab/sumset.hpp"

namespace sumsetlab::cli {

enum ExitCode : int { kSuccess = 0, kViolationFound = 1, kUsageError = 2 };

/// Verification backend used by the `verify` command.  Tests substitute a
/// double to reach the violation exit path.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual VerificationReport exhaustive(const FiniteGroup& g, Theorem theorem, const std::optional<SizeCaps>& caps,
                                        const RunOptions& opts) const {
    return verify_exhaustive(g, theorem, caps, opts);
  }
  virtual VerificationReport sampled(const FiniteGroup& g, Theorem theorem, const SamplingPlan& plan,
                                     const RunOptions& opts) const {
    return verify_sampled(g, theorem, plan, opts);
  }
};

/// Comma-separated element indices, each < order.  Throws std::invalid_argument.
std::vector<Element> parse_element_list(const std::string& text, std::size_t order);

/// args[0] is the program name.  Output goes to `out` unless --out is given.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, const Verifier& verifier);
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sumsetlab::cli
