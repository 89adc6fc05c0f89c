#include "cope/report.hpp"

#include <chrono>

#include "cope/digest.hpp"

namespace cope {

using nlohmann::ordered_json;

AnalysisReport AnalysisReport::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed report JSON");
    return AnalysisReport{std::move(j)};
}

template <class S>
ordered_json matrix_json(const Matrix<S>& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t t = 0; t < m.cols(); ++t) row.push_back(m(i, t).str());
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

namespace {

const char* verdict_name(EnmfVerdict v) {
    switch (v) {
        case EnmfVerdict::Exists: return "exists";
        case EnmfVerdict::NotExists: return "not_exists";
        default: return "unknown";
    }
}

const char* method_name(EnnrStepMethod m) {
    switch (m) {
        case EnnrStepMethod::RankShortCircuit: return "rank-short-circuit";
        case EnnrStepMethod::ExactPolygon: return "exact-polygon";
        case EnnrStepMethod::CappedOuterRefutation: return "capped-outer-refutation";
        case EnnrStepMethod::OuterVertexModel: return "outer-vertex-model";
        default: return "heuristic-on-reduction";
    }
}

const char* status_name(EnnrStatus s) {
    switch (s) {
        case EnnrStatus::Exact: return "exact";
        case EnnrStatus::UpperBound: return "upper-bound";
        case EnnrStatus::NoModel: return "no-model";
        default: return "undecided";
    }
}

} // namespace

template <class S>
ordered_json certificate_json(const EnmfCertificate<S>& cert) {
    ordered_json j;
    j["verdict"] = verdict_name(cert.verdict);
    j["inner_dim"] = cert.inner_dim;
    if (cert.verdict == EnmfVerdict::Exists) {
        if (!cert.r_factor.empty()) j["r_factor"] = matrix_json(cert.r_factor);
        if (!cert.e_factor.empty()) j["e_factor"] = matrix_json(cert.e_factor);
        if (cert.float_verified_only) j["float_verified_only"] = true;
    } else if (cert.verdict == EnmfVerdict::NotExists && !cert.dual.empty()) {
        ordered_json dual = ordered_json::array();
        for (const auto& y : cert.dual) dual.push_back(y.str());
        j["dual"] = std::move(dual);
        j["dual_value"] = cert.dual_value.str();
        if (!cert.lp_digest.empty()) j["lp_digest"] = cert.lp_digest;
    }
    if (!cert.reason.empty()) j["reason"] = cert.reason;
    return j;
}

template <class S>
ordered_json lp_dump_json(const ShearProblem<S>& sp) {
    ordered_json j;
    j["k"] = sp.k;
    j["r"] = sp.r;
    j["n"] = sp.n;
    j["variable_order"] = "S row-major (k x n), D+ row-major ((k-r) x r), D- row-major";
    ordered_json obj = ordered_json::array();
    for (const auto& c : sp.lp.objective) obj.push_back(c.str());
    j["objective"] = std::move(obj);
    ordered_json rhs = ordered_json::array();
    for (const auto& b : sp.lp.rhs) rhs.push_back(b.str());
    j["rhs"] = std::move(rhs);
    j["constraints"] = matrix_json(sp.lp.constraints);
    return j;
}

template <class S>
AnalysisReport run_analysis(const CopeMatrix<S>& c, const AnalysisOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json j;
    j["input_digest"] = digest_hex(matrix_digest(c.data));
    j["backend"] = is_exact_v<S> ? "exact" : "float";
    if constexpr (!is_exact_v<S>)
        j["tolerance"] = FloatScalar::tolerance();
    else
        j["tolerance"] = nullptr;
    j["rows"] = c.rows();
    j["cols"] = c.cols();
    j["measurements"] = c.measurements();

    const std::size_t r = rank(c.data);
    j["rank"] = r;

    // trivial factorization (C, identity) and its rank separation
    {
        auto sep = check_rank_separation(c.data, Matrix<S>::identity(c.cols()));
        ordered_json tm;
        tm["rank_r"] = sep.rank_r;
        tm["rank_e"] = sep.rank_e;
        tm["separated"] = !sep.equal_ranks;
        j["trivial_model"] = std::move(tm);
    }

    // nonnegative rank
    {
        NnrBounds bounds = nnr_bounds(c.data);
        ordered_json nj;
        nj["lower"] = bounds.lower;
        if (bounds.upper)
            nj["upper"] = *bounds.upper;
        else
            nj["upper"] = nullptr;
        nj["exact"] = bounds.exact;
        if (bounds.exact && r == 3) {
            auto witness = nnr_exact_rank3(c.data, bounds.lower);
            if (witness.answer == NnrAnswer::Yes) {
                nj["witness"] = ordered_json{{"r_factor", matrix_json(witness.witness_r)},
                                             {"e_factor", matrix_json(witness.witness_e)}};
            }
        }
        j["nnr"] = std::move(nj);
    }

    // equirank nonnegative rank
    EnnrOptions eopt;
    eopt.oracle = options.oracle;
    eopt.max_k = options.max_k;
    eopt.heuristic = options.heuristic;
    eopt.heuristic.seed ^= options.seed;
    EnnrResult<S> res = ennr(c, eopt);
    {
        ordered_json ej;
        ej["status"] = status_name(res.status);
        if (res.value)
            ej["value"] = *res.value;
        else
            ej["value"] = nullptr;
        ordered_json steps = ordered_json::array();
        for (const auto& step : res.transcript) {
            ordered_json sj;
            sj["k"] = step.k;
            sj["method"] = method_name(step.method);
            sj["certificate"] = certificate_json(step.certificate);
            steps.push_back(std::move(sj));
        }
        ej["transcript"] = std::move(steps);
        j["ennr"] = std::move(ej);
    }

    // contextuality verdict with its certificate
    {
        ordered_json cj;
        if (res.status == EnnrStatus::NoModel) {
            cj["verdict"] = "contextual";
            cj["certificate"] = certificate_json(res.global);
        } else if (res.value) {
            cj["verdict"] = "noncontextual";
            const EnmfCertificate<S>* model = nullptr;
            for (const auto& step : res.transcript)
                if (step.k == *res.value && step.certificate.verdict == EnmfVerdict::Exists)
                    model = &step.certificate;
            if (model && !model->r_factor.empty()) {
                cj["model"] = certificate_json(*model);
            } else {
                cj["model"] = certificate_json(res.global);
            }
        } else {
            cj["verdict"] = "undetermined";
        }
        j["contextuality"] = std::move(cj);
    }

    if (options.include_timing) {
        auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        j["timing_ms"] = dt;
    }
    return AnalysisReport{std::move(j)};
}

template ordered_json matrix_json<QuadraticScalar>(const Matrix<QuadraticScalar>&);
template ordered_json matrix_json<FloatScalar>(const Matrix<FloatScalar>&);
template ordered_json certificate_json<QuadraticScalar>(const EnmfCertificate<QuadraticScalar>&);
template ordered_json certificate_json<FloatScalar>(const EnmfCertificate<FloatScalar>&);
template ordered_json lp_dump_json<QuadraticScalar>(const ShearProblem<QuadraticScalar>&);
template ordered_json lp_dump_json<FloatScalar>(const ShearProblem<FloatScalar>&);
template AnalysisReport run_analysis<QuadraticScalar>(const CopeMatrix<QuadraticScalar>&,
                                                      const AnalysisOptions&);
template AnalysisReport run_analysis<FloatScalar>(const CopeMatrix<FloatScalar>&, const AnalysisOptions&);

} // namespace cope
