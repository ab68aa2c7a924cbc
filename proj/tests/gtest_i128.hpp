#pragma once

// GoogleTest cannot print __int128 on its own; route it through azeta::to_string.

#include <gtest/gtest.h>

#include <ostream>

#include "azeta/rational.hpp"

namespace testing::internal {

template <>
class UniversalPrinter<__int128> {
 public:
  static void Print(const __int128& v, std::ostream* os) { *os << azeta::to_string(v); }
};

}  // namespace testing::internal
