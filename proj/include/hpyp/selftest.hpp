#pragma once

#include <functional>
#include <string>

namespace hpyp {

// Fast invariant suite behind `hpyp-lab selftest`; designed to finish well
// under a minute. Reports each check through the sink when verbose.
// Returns the number of failed checks.
int run_selftest(bool verbose,
                 const std::function<void(const std::string&)>& sink);

}  // namespace hpyp
