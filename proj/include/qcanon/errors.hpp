#pragma once

#include <stdexcept>
#include <string>

namespace qcanon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QCANON_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

QCANON_DEFINE_ERROR(NotAntisymmetric);
QCANON_DEFINE_ERROR(NotDivisible);
QCANON_DEFINE_ERROR(MarginMismatch);
QCANON_DEFINE_ERROR(IllegalMove);
QCANON_DEFINE_ERROR(NotComparable);
QCANON_DEFINE_ERROR(TriangularityViolation);
QCANON_DEFINE_ERROR(NonSymmetricCoefficient);
QCANON_DEFINE_ERROR(OutOfCell);
QCANON_DEFINE_ERROR(IndexOutOfRange);
QCANON_DEFINE_ERROR(ParseError);
QCANON_DEFINE_ERROR(CacheCorrupt);
QCANON_DEFINE_ERROR(UsageError);

#undef QCANON_DEFINE_ERROR

}  // namespace qcanon
