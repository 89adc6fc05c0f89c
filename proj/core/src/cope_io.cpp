#include "cope/cope_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cope {

namespace {

using nlohmann::ordered_json;

template <class S>
Matrix<S> entries_to_matrix(const ordered_json& entries, long radicand) {
    if (!entries.is_array() || entries.empty())
        throw ParseError("'entries' must be a non-empty array of rows");
    std::vector<std::vector<S>> rows;
    for (const auto& row : entries) {
        if (!row.is_array()) throw ParseError("each row must be an array of scalar strings");
        std::vector<S> r;
        for (const auto& cell : row) {
            if (cell.is_string())
                r.push_back(S::parse(cell.template get<std::string>(), radicand));
            else if (cell.is_number())
                r.push_back(S::parse(cell.dump(), radicand));
            else
                throw ParseError("matrix entries must be strings in the scalar grammar");
        }
        rows.push_back(std::move(r));
    }
    return Matrix<S>::from_rows(rows);
}

template <class S>
ordered_json matrix_to_entries(const Matrix<S>& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json parse_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

} // namespace

template <class S>
CopeMatrix<S> parse_cope_json(const std::string& text) {
    ordered_json j = parse_json_text(text);
    long radicand = j.value("radicand", 5L);
    if (!j.contains("entries")) throw ParseError("missing 'entries'");
    Matrix<S> m = entries_to_matrix<S>(j["entries"], radicand);
    std::vector<std::size_t> blocks;
    if (j.contains("block_heights"))
        for (const auto& h : j["block_heights"]) blocks.push_back(h.template get<std::size_t>());
    else
        blocks.push_back(m.rows());
    if (j.contains("l") && j["l"].template get<std::size_t>() != blocks.size())
        throw ParseError("'l' disagrees with the number of block heights");
    CopeForm form = CopeForm::A;
    if (j.value("form", std::string("A")) == "B") form = CopeForm::B;
    return validate_cope(m, blocks, form);
}

template <class S>
std::string cope_to_json(const CopeMatrix<S>& c, long radicand) {
    ordered_json j;
    j["radicand"] = radicand;
    j["l"] = c.measurements();
    j["block_heights"] = c.block_heights;
    j["form"] = c.form == CopeForm::A ? "A" : "B";
    j["entries"] = matrix_to_entries(c.data);
    return j.dump(2) + "\n";
}

template <class S>
Matrix<S> parse_matrix_json(const std::string& text) {
    ordered_json j = parse_json_text(text);
    long radicand = j.value("radicand", 5L);
    if (!j.contains("entries")) throw ParseError("missing 'entries'");
    return entries_to_matrix<S>(j["entries"], radicand);
}

template <class S>
std::string matrix_to_json(const Matrix<S>& m, long radicand) {
    ordered_json j;
    j["radicand"] = radicand;
    j["entries"] = matrix_to_entries(m);
    return j.dump(2) + "\n";
}

CopeMatrix<FloatScalar> parse_cope_csv(const std::string& text, std::vector<std::size_t> blocks) {
    std::vector<std::vector<FloatScalar>> rows;
    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream cells(line);
        std::vector<FloatScalar> row;
        std::string cell;
        while (cells >> cell) {
            try {
                row.push_back(FloatScalar::parse(cell));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")",
                                 lineno);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty CSV input");
    Matrix<FloatScalar> m = Matrix<FloatScalar>::from_rows(rows);
    if (blocks.empty()) blocks.push_back(m.rows());
    return validate_cope(m, blocks, CopeForm::A);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

template CopeMatrix<QuadraticScalar> parse_cope_json<QuadraticScalar>(const std::string&);
template CopeMatrix<FloatScalar> parse_cope_json<FloatScalar>(const std::string&);
template std::string cope_to_json<QuadraticScalar>(const CopeMatrix<QuadraticScalar>&, long);
template std::string cope_to_json<FloatScalar>(const CopeMatrix<FloatScalar>&, long);
template Matrix<QuadraticScalar> parse_matrix_json<QuadraticScalar>(const std::string&);
template Matrix<FloatScalar> parse_matrix_json<FloatScalar>(const std::string&);
template std::string matrix_to_json<QuadraticScalar>(const Matrix<QuadraticScalar>&, long);
template std::string matrix_to_json<FloatScalar>(const Matrix<FloatScalar>&, long);

} // namespace cope
