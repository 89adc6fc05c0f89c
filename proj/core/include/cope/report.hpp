#ifndef COPE_REPORT_HPP
#define COPE_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cope/cope_matrix.hpp"
#include "cope/enmf.hpp"

namespace cope {

struct AnalysisOptions {
    NnrStrategy oracle = NnrStrategy::Auto;
    std::size_t max_k = 0; // 0: r^2
    std::uint64_t seed = 0;
    bool include_timing = false;
    HeuristicOptions heuristic;
};

/// Machine-checkable analysis result. Every verdict carries its certificate
/// (model factors or dual vectors) in the scalar text grammar; the JSON form
/// is deterministic apart from the optional timing block.
struct AnalysisReport {
    nlohmann::ordered_json doc;

    std::string to_json() const { return doc.dump(2) + "\n"; }
    static AnalysisReport from_json(const std::string& text);
    friend bool operator==(const AnalysisReport& a, const AnalysisReport& b) { return a.doc == b.doc; }
};

template <class S>
nlohmann::ordered_json matrix_json(const Matrix<S>& m);

template <class S>
nlohmann::ordered_json certificate_json(const EnmfCertificate<S>& cert);

/// Dump of the shear program in its block layout: variable order S (row-major
/// k x n), then D+, then D-; constraints in the same row-major order.
template <class S>
nlohmann::ordered_json lp_dump_json(const ShearProblem<S>& sp);

template <class S>
AnalysisReport run_analysis(const CopeMatrix<S>& c, const AnalysisOptions& options = {});

} // namespace cope

#endif
