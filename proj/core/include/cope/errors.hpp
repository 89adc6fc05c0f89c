#ifndef COPE_ERRORS_HPP
#define COPE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cope {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (scalar grammar, JSON, CSV).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(msg), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

// Structurally invalid data (bad COPE, dimension mismatch, rank deficiency).
class ValidationError : public Error {
public:
    enum class Kind {
        NegativeEntry,
        NonStochasticColumn,
        ZeroRow,
        ZeroColumn,
        BlockMismatch,
        DimensionMismatch,
        RankDeficient,
    };
    ValidationError(Kind kind, const std::string& msg,
                    std::size_t block = npos, std::size_t row = npos, std::size_t col = npos)
        : Error(msg), kind(kind), block(block), row(row), col(col) {}
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    Kind kind;
    std::size_t block;
    std::size_t row;
    std::size_t col;
};

// Violated mathematical precondition (division by zero, nonpositive round_pow2
// argument, center not interior, inner polytope not contained in outer).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Arithmetic between scalars of different quadratic fields.
class FieldMismatchError : public Error {
public:
    FieldMismatchError(long left, long right)
        : Error("mixed radicands " + std::to_string(left) + " and " + std::to_string(right)),
          left(left), right(right) {}
    long left;
    long right;
};

// A desk-scale guard tripped (vertex enumeration dimension, LP bit growth,
// stability-checker subset count). CLI maps this to exit code 3.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& msg) : Error(msg) {}
};

} // namespace cope

#endif
