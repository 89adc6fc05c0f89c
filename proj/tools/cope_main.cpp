#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cope/cope_io.hpp"
#include "cope/digest.hpp"
#include "cope/enmf.hpp"
#include "cope/fixtures.hpp"
#include "cope/report.hpp"
#include "cope/svg.hpp"

namespace {

using namespace cope;

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitResourceGuard = 3;

struct GlobalFlags {
    std::string backend = "exact";
    double tol = 1e-9;
    std::size_t max_k = 0;
    bool json = false;
    std::uint64_t seed = 0;
    std::string oracle = "auto";
    bool timing = false;
};

NnrStrategy oracle_from_name(const std::string& name) {
    if (name == "exact") return NnrStrategy::Exact;
    if (name == "heuristic") return NnrStrategy::Heuristic;
    return NnrStrategy::Auto;
}

template <class S>
CopeMatrix<S> load_cope(const std::string& path, const std::vector<std::size_t>& blocks) {
    std::string text = read_file(path);
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        if constexpr (std::is_same_v<S, FloatScalar>) {
            return parse_cope_csv(text, blocks);
        } else {
            throw ParseError("CSV input requires --backend float");
        }
    }
    return parse_cope_json<S>(text);
}

template <class S>
int do_analyze(const GlobalFlags& flags, const std::string& path,
               const std::vector<std::size_t>& blocks) {
    CopeMatrix<S> c = load_cope<S>(path, blocks);
    AnalysisOptions opt;
    opt.oracle = oracle_from_name(flags.oracle);
    opt.max_k = flags.max_k;
    opt.seed = flags.seed;
    opt.include_timing = flags.timing;
    AnalysisReport report = run_analysis(c, opt);
    if (flags.json) {
        std::cout << report.to_json();
    } else {
        const auto& j = report.doc;
        std::cout << "input:     " << path << " (" << j["rows"] << "x" << j["cols"] << ", l="
                  << j["measurements"] << ", digest " << j["input_digest"].get<std::string>()
                  << ")\n";
        std::cout << "backend:   " << j["backend"].get<std::string>() << "\n";
        std::cout << "rank:      " << j["rank"] << "\n";
        std::cout << "nnr:       lower " << j["nnr"]["lower"] << ", upper " << j["nnr"]["upper"]
                  << (j["nnr"]["exact"].get<bool>() ? " (exact)" : "") << "\n";
        std::cout << "ennr:      " << j["ennr"]["value"] << " ["
                  << j["ennr"]["status"].get<std::string>() << "]\n";
        std::cout << "verdict:   " << j["contextuality"]["verdict"].get<std::string>() << "\n";
        for (const auto& step : j["ennr"]["transcript"]) {
            std::cout << "  k=" << step["k"] << "  " << step["method"].get<std::string>() << "  -> "
                      << step["certificate"]["verdict"].get<std::string>();
            if (step["certificate"].contains("dual_value"))
                std::cout << "  (dual value " << step["certificate"]["dual_value"].get<std::string>()
                          << ")";
            else if (step["certificate"].contains("reason"))
                std::cout << "  (" << step["certificate"]["reason"].get<std::string>() << ")";
            std::cout << "\n";
        }
        if (flags.timing && j.contains("timing_ms"))
            std::cout << "timing:    " << j["timing_ms"] << " ms\n";
    }
    return kExitOk;
}

template <class S>
int do_verify(const std::string& cpath, const std::string& rpath, const std::string& epath,
              bool noncontextual) {
    CopeMatrix<S> c = load_cope<S>(cpath, {});
    Matrix<S> r = parse_matrix_json<S>(read_file(rpath));
    Matrix<S> e = parse_matrix_json<S>(read_file(epath));
    ModelVerdict<S> v = verify_model(c, r, e, noncontextual);
    if (v.pass) {
        std::cout << "pass (ranks: matrix " << v.rank_c << ", left " << v.rank_r << ", right "
                  << v.rank_e << ")\n";
        return kExitOk;
    }
    std::cout << "fail: " << v.failed_check << "\n";
    return kExitFailedCheck;
}

template <class S>
int do_nnr(const GlobalFlags& flags, const std::string& path, std::size_t k,
           const std::vector<std::size_t>& blocks) {
    CopeMatrix<S> c = load_cope<S>(path, blocks);
    if (k == 0) {
        NnrBounds b = nnr_bounds(c.data);
        std::cout << "nnr lower bound: " << b.lower << "\n";
        if (b.upper) std::cout << "nnr upper bound: " << *b.upper << (b.exact ? " (exact)" : "") << "\n";
        return kExitOk;
    }
    NnrVerdict<S> v;
    NnrStrategy strat = oracle_from_name(flags.oracle);
    if (strat != NnrStrategy::Heuristic && rank(c.data) == 3) {
        v = nnr_exact_rank3(c.data, k);
    } else if (strat == NnrStrategy::Exact) {
        std::cout << "unknown: exact decision needs rank 3\n";
        return kExitOk;
    } else {
        HeuristicOptions hopt;
        hopt.seed = flags.seed;
        v = nnr_heuristic_matrix(c.data, k, hopt);
    }
    switch (v.answer) {
        case NnrAnswer::Yes:
            std::cout << "yes: factorization with inner dimension " << k
                      << (v.float_witness ? " (float-verified witness)" : " (exact witness)") << "\n";
            break;
        case NnrAnswer::No: std::cout << "no: " << v.reason << "\n"; break;
        default: std::cout << "unknown: " << v.reason << "\n"; break;
    }
    return kExitOk;
}

template <class S>
int do_ennr(const GlobalFlags& flags, const std::string& path,
            const std::vector<std::size_t>& blocks) {
    CopeMatrix<S> c = load_cope<S>(path, blocks);
    EnnrOptions opt;
    opt.oracle = oracle_from_name(flags.oracle);
    opt.max_k = flags.max_k;
    opt.heuristic.seed = flags.seed;
    EnnrResult<S> res = ennr(c, opt);
    if (flags.json) {
        nlohmann::ordered_json j;
        j["value"] = res.value ? nlohmann::ordered_json(*res.value) : nlohmann::ordered_json(nullptr);
        j["status"] = res.status == EnnrStatus::Exact         ? "exact"
                      : res.status == EnnrStatus::UpperBound  ? "upper-bound"
                      : res.status == EnnrStatus::NoModel     ? "no-model"
                                                              : "undecided";
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (const auto& s : res.transcript) {
            steps.push_back({{"k", s.k}, {"certificate", certificate_json(s.certificate)}});
        }
        j["transcript"] = steps;
        std::cout << j.dump(2) << "\n";
    } else {
        if (res.status == EnnrStatus::NoModel)
            std::cout << "no noncontextual model of any size (dual value "
                      << res.global.dual_value.str() << ")\n";
        else if (res.value)
            std::cout << "ennr = " << *res.value
                      << (res.status == EnnrStatus::Exact ? "" : " (upper bound; smaller k undecided)")
                      << "\n";
        else
            std::cout << "undecided within the scanned range\n";
    }
    return kExitOk;
}

template <class S>
int do_reduce(const GlobalFlags& flags, const std::string& path, std::size_t k,
              const std::string& out_path, const std::vector<std::size_t>& blocks) {
    CopeMatrix<S> c = load_cope<S>(path, blocks);
    ReductionOutput<S> red = reduce_to_nnr(c, k);
    std::string text = cope_to_json(red.c_bar);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
        std::cout << "wrote " << out_path << " (" << red.c_bar.rows() << "x" << red.c_bar.cols()
                  << ", rank " << red.k << ")\n";
    }
    (void)flags;
    return kExitOk;
}

template <class S>
int do_render(const std::string& path, const std::string& out_path,
              const std::vector<std::size_t>& blocks) {
    CopeMatrix<S> c = load_cope<S>(path, blocks);
    std::string svg = render_rank3(c);
    if (out_path.empty())
        std::cout << svg;
    else
        write_file(out_path, svg);
    return kExitOk;
}

int do_fixtures(const std::string& action, const std::string& name, const std::string& dir) {
    const std::vector<std::string> names = {"pentagon", "boxworld", "identity4",
                                            "pentagon-model-size5", "pentagon-model-size4"};
    if (action == "list") {
        for (const auto& n : names) std::cout << n << "\n";
        return kExitOk;
    }
    std::filesystem::create_directories(dir.empty() ? "." : dir);
    auto path = [&](const std::string& stem) {
        return (dir.empty() ? std::string(".") : dir) + "/" + stem;
    };
    auto emit_one = [&](const std::string& n) {
        if (n == "pentagon") {
            write_file(path("pentagon.json"), cope_to_json(fixtures::pentagon()));
        } else if (n == "boxworld") {
            write_file(path("boxworld.json"), cope_to_json(fixtures::box_world()));
        } else if (n == "identity4") {
            write_file(path("identity4.json"), cope_to_json(fixtures::identity_cope(4)));
        } else if (n == "pentagon-model-size5") {
            auto mp = fixtures::pentagon_model_size5();
            write_file(path("pentagon_r5.json"), matrix_to_json(mp.r_factor));
            write_file(path("pentagon_e5.json"), matrix_to_json(mp.e_factor));
        } else if (n == "pentagon-model-size4") {
            auto mp = fixtures::pentagon_model_size4();
            write_file(path("pentagon_r4.json"), matrix_to_json(mp.r_factor));
            write_file(path("pentagon_e4.json"), matrix_to_json(mp.e_factor));
        } else {
            throw ParseError("unknown fixture '" + n + "'");
        }
        std::cout << "emitted " << n << "\n";
    };
    if (name.empty() || name == "all") {
        for (const auto& n : names) emit_one(n);
    } else {
        emit_one(name);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"COPE matrix contextuality analyzer"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags flags;
    app.add_option("--backend", flags.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", flags.tol, "float-backend zero tolerance (default 1e-9)");
    app.add_option("--max-k", flags.max_k, "largest inner dimension scanned (default r^2)");
    app.add_flag("--json", flags.json, "machine-readable output");
    app.add_option("--seed", flags.seed, "seed mixed into heuristic restarts");
    app.add_option("--oracle", flags.oracle, "exact | heuristic | auto")
        ->check(CLI::IsMember({"exact", "heuristic", "auto"}));
    app.add_flag("--timing", flags.timing, "include timing in reports");

    std::string in_path, out_path, r_path, e_path;
    std::vector<std::size_t> blocks;
    std::size_t k_arg = 0;
    bool noncontextual = false;
    std::string fixture_action = "list", fixture_name;

    auto* analyze = app.add_subcommand("analyze", "full pipeline report for a COPE file");
    analyze->add_option("input", in_path)->required();
    analyze->add_option("--blocks", blocks, "block heights for CSV input");

    auto* verify = app.add_subcommand("verify", "check a model R,E against a COPE matrix");
    verify->add_option("matrix", in_path)->required();
    verify->add_option("left", r_path)->required();
    verify->add_option("right", e_path)->required();
    verify->add_flag("--noncontextual", noncontextual, "also require equal ranks");

    auto* nnr_cmd = app.add_subcommand("nnr", "nonnegative rank bounds or a fixed-k decision");
    nnr_cmd->add_option("input", in_path)->required();
    nnr_cmd->add_option("-k,--k", k_arg, "decide NNR <= k instead of reporting bounds");
    nnr_cmd->add_option("--blocks", blocks);

    auto* ennr_cmd = app.add_subcommand("ennr", "smallest noncontextual model search");
    ennr_cmd->add_option("input", in_path)->required();
    ennr_cmd->add_option("--blocks", blocks);

    auto* reduce = app.add_subcommand("reduce", "emit the rank-k reduction as a COPE file");
    reduce->add_option("input", in_path)->required();
    reduce->add_option("-k,--k", k_arg)->required();
    reduce->add_option("-o,--output", out_path);
    reduce->add_option("--blocks", blocks);

    auto* render = app.add_subcommand("render", "SVG of the rank-3 plane geometry");
    render->add_option("input", in_path)->required();
    render->add_option("-o,--output", out_path);
    render->add_option("--blocks", blocks);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "list or emit the bundled experiments");
    fixtures_cmd->add_option("action", fixture_action)->check(CLI::IsMember({"list", "emit"}));
    fixtures_cmd->add_option("name", fixture_name);
    fixtures_cmd->add_option("--dir", out_path);

    CLI11_PARSE(app, argc, argv);

    const bool exact = flags.backend == "exact";
    FloatScalar::set_tolerance(flags.tol);
    try {
        if (analyze->parsed())
            return exact ? do_analyze<QuadraticScalar>(flags, in_path, blocks)
                         : do_analyze<FloatScalar>(flags, in_path, blocks);
        if (verify->parsed())
            return exact ? do_verify<QuadraticScalar>(in_path, r_path, e_path, noncontextual)
                         : do_verify<FloatScalar>(in_path, r_path, e_path, noncontextual);
        if (nnr_cmd->parsed())
            return exact ? do_nnr<QuadraticScalar>(flags, in_path, k_arg, blocks)
                         : do_nnr<FloatScalar>(flags, in_path, k_arg, blocks);
        if (ennr_cmd->parsed())
            return exact ? do_ennr<QuadraticScalar>(flags, in_path, blocks)
                         : do_ennr<FloatScalar>(flags, in_path, blocks);
        if (reduce->parsed())
            return exact ? do_reduce<QuadraticScalar>(flags, in_path, k_arg, out_path, blocks)
                         : do_reduce<FloatScalar>(flags, in_path, k_arg, out_path, blocks);
        if (render->parsed())
            return exact ? do_render<QuadraticScalar>(in_path, out_path, blocks)
                         : do_render<FloatScalar>(in_path, out_path, blocks);
        if (fixtures_cmd->parsed()) return do_fixtures(fixture_action, fixture_name, out_path);
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResourceGuard;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}
