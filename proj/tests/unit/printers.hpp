#pragma once

// gtest value printers for the library types.

#include <ostream>

#include "qcanon/coeff.hpp"
#include "qcanon/matgrid.hpp"

namespace qcanon {

inline void PrintTo(const GammaMonomial& m, std::ostream* os) { *os << m.to_string(); }
inline void PrintTo(const GammaLaurent& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const MatIdx& a, std::ostream* os) { *os << "[" << a.to_string() << "]"; }

}  // namespace qcanon
