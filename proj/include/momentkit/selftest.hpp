#pragma once

#include <cstdint>
#include <ostream>

namespace momentkit {

/// Seeded property suites over every module; prints one table row per
/// suite. Returns the number of failing suites.
int runSelftest(std::uint64_t seed, std::ostream& out);

}  // namespace momentkit
