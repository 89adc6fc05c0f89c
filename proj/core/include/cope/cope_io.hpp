#ifndef COPE_COPE_IO_HPP
#define COPE_COPE_IO_HPP

#include <string>
#include <vector>

#include "cope/cope_matrix.hpp"

namespace cope {

/// COPE file format: {"radicand": 5, "l": 2, "block_heights": [2,2],
/// "entries": [["1","1","0","0"], ...]} with entries in the scalar grammar.
template <class S>
CopeMatrix<S> parse_cope_json(const std::string& text);

template <class S>
std::string cope_to_json(const CopeMatrix<S>& c, long radicand = 5);

/// Plain matrix files reuse the same layout without block structure.
template <class S>
Matrix<S> parse_matrix_json(const std::string& text);

template <class S>
std::string matrix_to_json(const Matrix<S>& m, long radicand = 5);

/// Float CSV input: one row per line, comma- or whitespace-separated decimal
/// entries; block heights supplied by the caller (single block when empty).
CopeMatrix<FloatScalar> parse_cope_csv(const std::string& text, std::vector<std::size_t> blocks);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace cope

#endif
