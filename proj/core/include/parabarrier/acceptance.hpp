#pragma once

#include <iosfwd>

namespace parabarrier::acceptance {

/// Runs the full acceptance suite, printing one pass/fail line per criterion.
/// Returns the number of failed criteria.
int run_all(std::ostream& out);

}  // namespace parabarrier::acceptance
