// sigrank: batch front end. Every command prints one JSON report
//   {"command": ..., "inputs": {...}, "result": {...}, "ok": bool}
// to stdout or to --out. Exit codes: 0 ok, 1 a requested check failed,
// 2 usage error, 3 malformed input, 4 mathematical precondition violated.

#include "io.hpp"
#include "random.hpp"
#include "sigrank.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace sigrank;

namespace {

constexpr std::size_t kMaxDim = 6;
constexpr std::size_t kMaxLevel = 8;
constexpr std::size_t kCostWarning = 1u << 14;

struct Globals {
    std::string out;
    bool with_float = false;
    bool allow_large = false;
};

struct Outcome {
    Json result;
    bool ok = true;
    Json certificates = nullptr;
};

Globals globals;

void guard_size(std::size_t d, std::size_t K) {
    if (!globals.allow_large) {
        if (d > kMaxDim)
            throw MathError("dimension " + std::to_string(d) + " exceeds " + std::to_string(kMaxDim) +
                            " (pass --allow-large to override)");
        if (K > kMaxLevel)
            throw MathError("level " + std::to_string(K) + " exceeds " + std::to_string(kMaxLevel) +
                            " (pass --allow-large to override)");
    }
    std::size_t entries = 1;
    for (std::size_t k = 0; k < K && entries <= kCostWarning; ++k) entries *= d;
    if (entries > kCostWarning)
        std::cerr << "warning: a level-" << K << " tensor in dimension " << d << " has " << d << "^" << K
                  << " entries; expect slow exact arithmetic\n";
}

// Input files may be bare artifacts or reports written by an earlier command.
Json read_artifact(const std::string& file, const char* key) {
    Json j = read_json_file(file);
    if (j.is_object() && j.contains("command") && j.contains("result")) {
        const Json& r = j["result"];
        if (!r.is_object() || !r.contains(key))
            throw ParseError(file + ": report from '" + j["command"].dump() + "' has no result/" + key);
        return r[key];
    }
    return j;
}

bool csv_has_header = false;

// A header row is turned into a comment so reported line numbers stay true.
std::string drop_header(std::string text) {
    std::size_t at = 0;
    while (at < text.size()) {
        const std::size_t end = text.find('\n', at);
        const std::string_view line(text.data() + at, (end == std::string::npos ? text.size() : end) - at);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos && line.front() != '#') {
            text.insert(at, "#");
            break;
        }
        if (end == std::string::npos) break;
        at = end + 1;
    }
    return text;
}

Path load_path(const std::string& json_file, const std::string& csv_file) {
    if (!json_file.empty() && !csv_file.empty()) throw MathError("give either --path or --csv, not both");
    if (!json_file.empty()) return path_from_json(read_artifact(json_file, "path"), json_file);
    if (!csv_file.empty()) {
        std::string text = read_text_file(csv_file);
        if (csv_has_header) text = drop_header(std::move(text));
        const auto rows = parse_time_series_csv(text, csv_file);
        return time_series_to_path(rows);
    }
    throw MathError("an input path is required (--path or --csv)");
}

Json nonzero_coefficients(const Tensor& t) {
    Json out = Json::array();
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        if (sgn(t[flat]) == 0) continue;
        Word w;
        for (auto i : t.multi_index(flat)) w.letters.push_back(static_cast<std::uint32_t>(i + 1));
        Json entry{{"word", to_string(w)}, {"value", to_string(t[flat])}};
        if (globals.with_float) entry["value_float_lossy"] = t[flat].get_d();
        out.push_back(entry);
    }
    return out;
}

Json ranks_json(const std::vector<std::size_t>& r) {
    Json out = Json::array();
    for (auto x : r) out.push_back(x);
    return out;
}

Sig222Params parse_params(const std::string& text) {
    std::vector<Rational> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(parse_rational(item));
    if (vals.size() != 5) throw ParseError("--params expects five comma-separated rationals x,y,a,b,c");
    return {vals[0], vals[1], vals[2], vals[3], vals[4]};
}

// ----- property harness behind `verify` -----

struct Tally {
    Json checks = Json::object();
    bool ok = true;
    void record(const std::string& name, std::size_t passed, std::size_t total) {
        checks[name] = Json{{"passed", passed}, {"total", total}};
        ok = ok && passed == total;
    }
};

Json run_verify(std::uint64_t seed, std::size_t trials, bool& ok) {
    Sampler s(seed);
    Tally tally;
    std::size_t pass = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t d = 1 + s.integer(0, 2), m = 1 + s.integer(0, 3);
        const Path p = s.path(d, m, -3, 3);
        const auto sig = pwl_signature(p, 4);
        bool good = true;
        for (std::size_t n = 1; n <= 4 && good; ++n)
            for (const auto& w : all_words(d, n)) good = good && sig.entry(w) == iterated_integral_entry(p, w);
        pass += good;
    }
    tally.record("chen_vs_iterated_integrals", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t)
        pass += check_shuffle_identity(pwl_signature(s.path(2, 3, -3, 3), 4), 4).holds;
    tally.record("shuffle_identity", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto l = s.log_signature(2, 4, -2, 2);
        pass += log_signature(exp_log_signature(l)) == l;
    }
    tally.record("log_exp_round_trip", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto l = s.log_signature(1 + s.integer(0, 2), 5, -2, 2);
        bool good = true;
        for (std::size_t k = 3; k <= 5; ++k) good = good && skew_impossibility_check(l, k);
        pass += good;
    }
    tally.record("skew_impossibility", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto l = s.log_signature(2, 5, -2, 2);
        pass += verify_partial_symmetry_consequences(l, 4).holds && verify_partial_symmetry_consequences(l, 5).holds;
    }
    tally.record("partial_symmetry_consequences", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Sig222Params q{s.integer(-3, 3), s.integer(-3, 3), s.integer(-3, 3), s.integer(-3, 3), s.integer(-3, 3)};
        if (t % 2 == 0) {
            q.b = q.a * q.x / 6;
            q.c = -q.a * q.y / 6;
        }
        const auto r = symmetry_report(sig222_from_params(q));
        pass += partial_symmetry_constraint(q, Block::first) == r.partial_first &&
                partial_symmetry_constraint(q, Block::last) == r.partial_last;
    }
    tally.record("sig222_constraint", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t k = 2 + s.integer(0, 3), m = 1 + s.integer(0, 4), alpha = s.integer(0, 2);
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < m; ++i) vs.push_back(s.int_vector(3, -2, 2));
        const auto dec = decompose_s_k_alpha(vs, k, alpha);
        pass += dec.realize() == s_k_alpha(vs, k, alpha) &&
                static_cast<std::int64_t>(dec.length()) <= rank_bound_formula(k, m);
    }
    tally.record("decomposition_realization", pass, trials);

    pass = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Vec> inc;
        for (std::size_t j = 0; j < 3; ++j) {
            Vec u = s.int_vector(3, -2, 2);
            u[0] = 0;
            inc.push_back(u);
        }
        const auto sig = pwl_signature(Path(3, inc), 4);
        const auto res = hyperplane_recovery(sig);
        const auto plane = Subspace::coordinate_hyperplane(3, 0);
        pass += res.subspace.has_value() && plane.contains(*res.subspace) &&
                divisor_propagation_check(sig, 4, plane).holds;
    }
    tally.record("hyperplane_confinement", pass, trials);

    ok = tally.ok;
    return tally.checks;
}

void emit(const Json& report) {
    const std::string text = report.dump(2) + "\n";
    if (globals.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path target(globals.out);
    if (target.is_relative())
        if (const char* dir = std::getenv("SIGRANK_OUT_DIR"); dir && *dir) target = std::filesystem::path(dir) / target;
    std::ofstream f(target);
    if (!f) throw std::runtime_error("cannot write " + target.string());
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact signature tensors, decompositions and rank certificates"};
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();
    app.add_option("--out", globals.out, "write the report here (relative paths resolve against $SIGRANK_OUT_DIR)");
    app.add_flag("--float", globals.with_float, "add lossy decimal columns next to exact values");
    app.add_flag("--allow-large", globals.allow_large, "lift the d <= 6, K <= 8 limits");
    app.fallthrough();

    std::string path_file, csv_file, sig_file, log_file, tensor_file, witness_file, vectors_file, w1, w2, params_text;
    std::size_t level = 4, k_arg = 3, m_arg = 4, alpha = 0, volume_degree = 2, from_level = 0, trials = 10;
    std::uint64_t seed = 1;
    Json inputs = Json::object();
    std::function<Outcome()> run;

    auto* signature = app.add_subcommand("signature", "signature of a piecewise linear path");
    signature->add_option("--path", path_file, "path JSON");
    signature->add_option("--csv", csv_file, "time series CSV, one sample per line");
    signature->add_option("--level", level, "truncation level K");
    signature->add_flag("--header", csv_has_header, "the CSV starts with a header row");
    signature->callback([&] {
        run = [&] {
            const Path p = load_path(path_file, csv_file);
            guard_size(p.dim(), level);
            inputs = {{"path", path_file}, {"csv", csv_file}, {"level", level}};
            const auto sig = pwl_signature(p, level);
            return Outcome{Json{{"signature", to_json(sig, globals.with_float)},
                                {"top_level_coefficients", nonzero_coefficients(sig.level(level))}}};
        };
    });

    auto* shuffle_cmd = app.add_subcommand("shuffle", "shuffle product of two words");
    shuffle_cmd->add_option("--w1", w1, "first word, e.g. 12 or 1,12")->required();
    shuffle_cmd->add_option("--w2", w2, "second word")->required();
    shuffle_cmd->callback([&] {
        run = [&] {
            inputs = {{"w1", w1}, {"w2", w2}};
            const WordSum s = shuffle(parse_word(w1), parse_word(w2));
            return Outcome{Json{{"sum", to_json(s)}, {"count", s.terms().size()}, {"total", s.total_mass()}}};
        };
    });

    auto* exp_cmd = app.add_subcommand("exp", "signature from a log-signature");
    std::size_t exp_level = 0;
    exp_cmd->add_option("--logsig,--log", log_file, "log-signature JSON")->required();
    exp_cmd->add_option("--level", exp_level, "truncate to this level (default: the file's)");
    exp_cmd->callback([&] {
        run = [&] {
            inputs = {{"logsig", log_file}, {"level", exp_level}};
            auto l = log_signature_from_json(read_artifact(log_file, "log_signature"), log_file);
            if (exp_level > l.max_level())
                throw MathError("--level " + std::to_string(exp_level) + " exceeds the log-signature's truncation " +
                                std::to_string(l.max_level()));
            if (exp_level != 0 && exp_level < l.max_level()) {
                std::vector<Tensor> kept(l.levels().begin(), l.levels().begin() + static_cast<long>(exp_level));
                l = LogSignature(l.dim(), kept);
            }
            guard_size(l.dim(), l.max_level());
            return Outcome{Json{{"signature", to_json(exp_log_signature(l), globals.with_float)}}};
        };
    });

    auto* log_cmd = app.add_subcommand("log", "log-signature of a signature or of a path");
    log_cmd->add_option("--sig", sig_file, "signature JSON");
    log_cmd->add_option("--path", path_file, "path JSON");
    log_cmd->add_option("--csv", csv_file, "time series CSV");
    log_cmd->add_option("--level", level, "truncation level when starting from a path");
    log_cmd->add_flag("--header", csv_has_header, "the CSV starts with a header row");
    log_cmd->callback([&] {
        run = [&] {
            inputs = {{"sig", sig_file}, {"path", path_file}, {"csv", csv_file}, {"level", level}};
            std::optional<TruncatedSignature> sig;
            if (!sig_file.empty()) {
                sig = signature_from_json(read_artifact(sig_file, "signature"), sig_file);
            } else {
                const Path p = load_path(path_file, csv_file);
                guard_size(p.dim(), level);
                sig = pwl_signature(p, level);
            }
            guard_size(sig->dim(), sig->max_level());
            return Outcome{Json{{"log_signature", to_json(log_signature(*sig), globals.with_float)}}};
        };
    });

    auto* decompose = app.add_subcommand("decompose", "explicit decomposition with a rank certificate");
    decompose->add_option("--path", path_file, "path JSON: decomposes signature level K");
    decompose->add_option("--vectors", vectors_file, "path JSON whose increments are v_1..v_m: decomposes S_{K,alpha}");
    decompose->add_option("--level", level, "order K");
    decompose->add_option("--alpha", alpha, "weight on the first vector (with --vectors)");
    decompose->callback([&] {
        run = [&] {
            inputs = {{"path", path_file}, {"vectors", vectors_file}, {"level", level}, {"alpha", alpha}};
            if (path_file.empty() == vectors_file.empty()) throw MathError("give exactly one of --path or --vectors");
            const std::string file = path_file.empty() ? vectors_file : path_file;
            const Path p = path_from_json(read_artifact(file, "path"), file);
            guard_size(p.dim(), level);
            const std::size_t a = path_file.empty() ? alpha : 0;
            const auto& vs = p.increments();
            const std::size_t m = vs.size();
            Tensor target = s_k_alpha(vs, level, a);
            Decomposition dec(p.dim(), level);
            if (a == 0 && m == 2)
                dec = decompose_two_segments(vs[0], vs[1], level);
            else if (a == 0 && m == 3)
                dec = decompose_three_segments(vs[0], vs[1], vs[2], level);
            else
                dec = decompose_s_k_alpha(vs, level, a);
            const bool realized = dec.realize() == target;
            const auto cert = certify_rank(target, dec);
            Json result{{"decomposition", to_json(dec)},
                        {"length", dec.length()},
                        {"bound", rank_bound_formula(static_cast<std::int64_t>(level), static_cast<std::int64_t>(m))},
                        {"realization_exact", realized}};
            Json certificate{{"lower", cert.lower}, {"upper", cert.upper}, {"exact", cert.exact()}};
            return Outcome{result, realized, Json{{"rank", certificate}}};
        };
    });

    auto* bound = app.add_subcommand("rank-bound", "closed-form upper bound on rk S_{k,alpha}(v_1..v_m)");
    bound->add_option("--k", k_arg, "order")->required();
    bound->add_option("--m", m_arg, "number of vectors")->required();
    bound->callback([&] {
        run = [&] {
            inputs = {{"k", k_arg}, {"m", m_arg}};
            const auto k = static_cast<std::int64_t>(k_arg), m = static_cast<std::int64_t>(m_arg);
            Json result{{"bound", rank_bound_formula(k, m)}};
            if (k >= 4 && m >= 4) {
                const bool same = nested_hockey_sum(k, m) == hockey_stick_closed(k, m);
                result["hockey_stick_identity"] = same;
                return Outcome{result, same};
            }
            return Outcome{result};
        };
    });

    auto* certify = app.add_subcommand("certify", "rank certificate from a tensor and a witness decomposition");
    certify->add_option("--tensor", tensor_file, "tensor JSON")->required();
    certify->add_option("--witness", witness_file, "decomposition JSON")->required();
    certify->callback([&] {
        run = [&] {
            inputs = {{"tensor", tensor_file}, {"witness", witness_file}};
            const Tensor t = tensor_from_json(read_artifact(tensor_file, "tensor"), tensor_file);
            guard_size(t.dim(), t.order());
            const auto dec = decomposition_from_json(read_artifact(witness_file, "decomposition"), witness_file);
            if (dec.order() != t.order() || dec.dim() != t.dim())
                throw MathError("witness shape differs from the tensor's");
            if (dec.realize() != t) return Outcome{Json{{"witness_realizes_tensor", false}}, false};
            const auto cert = certify_rank(t, dec);
            return Outcome{Json{{"witness_realizes_tensor", true}}, true, Json{{"rank", to_json(cert)}}};
        };
    });

    auto* classify = app.add_subcommand("classify222", "complex rank of a 2x2x2 tensor");
    classify->add_option("--tensor", tensor_file, "tensor JSON")->required();
    classify->callback([&] {
        run = [&] {
            inputs = {{"tensor", tensor_file}};
            const Tensor t = tensor_from_json(read_artifact(tensor_file, "tensor"), tensor_file);
            return Outcome{Json{{"hyperdeterminant", to_string(hyperdet_222(t))},
                                {"flattening_ranks", ranks_json(single_mode_flattening_ranks(t))},
                                {"complex_rank", classify_222_complex_rank(t)}}};
        };
    });

    auto* symmetry = app.add_subcommand("symmetry", "symmetric, skew and partial symmetry flags");
    symmetry->add_option("--tensor", tensor_file, "tensor JSON")->required();
    symmetry->callback([&] {
        run = [&] {
            inputs = {{"tensor", tensor_file}};
            const Tensor t = tensor_from_json(read_artifact(tensor_file, "tensor"), tensor_file);
            guard_size(t.dim(), t.order());
            const Json report = to_json(symmetry_report(t));
            return Outcome{Json{{"report", report}}, true, Json{{"symmetry", report}}};
        };
    });

    auto* sig222 = app.add_subcommand("sig222", "the 2x2x2 level-3 signature from (x,y,a,b,c)");
    sig222->add_option("--params", params_text, "x,y,a,b,c")->required();
    sig222->callback([&] {
        run = [&] {
            inputs = {{"params", params_text}};
            const auto p = parse_params(params_text);
            const Tensor t = sig222_from_params(p);
            const auto r = symmetry_report(t);
            const bool agree = partial_symmetry_constraint(p, Block::first) == r.partial_first &&
                               partial_symmetry_constraint(p, Block::last) == r.partial_last;
            Json result{{"tensor", to_json(t, globals.with_float)},
                        {"report", to_json(r)},
                        {"constraint_first", partial_symmetry_constraint(p, Block::first)},
                        {"constraint_last", partial_symmetry_constraint(p, Block::last)},
                        {"hyperdeterminant", to_string(hyperdet_222(t))},
                        {"flattening_ranks", ranks_json(single_mode_flattening_ranks(t))},
                        {"complex_rank", classify_222_complex_rank(t)},
                        {"constraint_matches_report", agree}};
            return Outcome{result, agree, Json{{"symmetry", result["report"]}}};
        };
    });

    auto* concise = app.add_subcommand("concise", "mode subspaces, symmetric conciseness and hyperplane recovery");
    concise->add_option("--sig", sig_file, "signature JSON");
    concise->add_option("--path", path_file, "path JSON");
    concise->add_option("--level", level, "truncation level (with --path), or the levels to inspect (with --sig)");
    concise->callback([&] {
        run = [&] {
            inputs = {{"sig", sig_file}, {"path", path_file}, {"level", level}};
            std::optional<TruncatedSignature> sig;
            if (!sig_file.empty()) {
                sig = signature_from_json(read_artifact(sig_file, "signature"), sig_file);
                if (concise->count("--level") == 0) level = sig->max_level();
                if (level > sig->max_level())
                    throw MathError("--level " + std::to_string(level) + " exceeds the signature's truncation " +
                                    std::to_string(sig->max_level()));
                std::vector<Tensor> kept(sig->levels().begin(), sig->levels().begin() + static_cast<long>(level) + 1);
                sig = TruncatedSignature(sig->dim(), kept);
            } else {
                const Path p = load_path(path_file, "");
                guard_size(p.dim(), level);
                sig = pwl_signature(p, level);
            }
            Json levels = Json::array();
            for (std::size_t k = 1; k <= sig->max_level(); ++k) {
                Json modes = Json::array();
                for (const auto& sp : mode_subspaces(sig->level(k))) modes.push_back(to_json(sp));
                const auto w = symmetric_conciseness(sig->level(k));
                levels.push_back(Json{{"level", k},
                                      {"mode_subspaces", modes},
                                      {"concise", is_concise(sig->level(k))},
                                      {"symmetric_span", to_json(w)},
                                      {"symmetrically_concise", w.is_full()}});
            }
            const auto rec = hyperplane_recovery(*sig);
            Json recovery{{"certified_up_to", rec.certified_up_to},
                          {"label", "certified up to level " + std::to_string(rec.certified_up_to)}};
            recovery["subspace"] = rec.subspace ? to_json(*rec.subspace) : Json(nullptr);
            return Outcome{Json{{"levels", levels}, {"hyperplane_recovery", recovery}}, true,
                           Json{{"subspace", recovery["subspace"]}}};
        };
    });

    auto* pure = app.add_subcommand("pure-volume", "test whether a signature tail is that of a pure n-volume");
    pure->add_option("--sig", sig_file, "signature JSON");
    pure->add_option("--logsig,--log", log_file, "log-signature JSON (exponentiated first)");
    pure->add_option("--n", volume_degree, "degree n")->required();
    pure->add_option("--k0,--from", from_level, "first level k0 to test (default n+1)");
    pure->callback([&] {
        run = [&] {
            inputs = {{"sig", sig_file}, {"logsig", log_file}, {"n", volume_degree}, {"k0", from_level}};
            if (sig_file.empty() == log_file.empty()) throw MathError("give exactly one of --sig or --log");
            const TruncatedSignature sig = sig_file.empty()
                                               ? exp_log_signature(log_signature_from_json(read_artifact(log_file, "log_signature"), log_file))
                                               : signature_from_json(read_artifact(sig_file, "signature"), sig_file);
            guard_size(sig.dim(), sig.max_level());
            const std::size_t k0 = from_level == 0 ? volume_degree + 1 : from_level;
            const bool pure_tail = pure_volume_check(sig, volume_degree, k0);
            return Outcome{Json{{"pure_volume", pure_tail}, {"checked_levels", Json::array({k0, sig.max_level()})}}};
        };
    });

    auto* verify = app.add_subcommand("verify", "run the randomized property harness");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--size,--trials", trials, "trials per check");
    verify->callback([&] {
        run = [&] {
            inputs = {{"seed", seed}, {"size", trials}};
            bool ok = true;
            Json checks = run_verify(seed, trials, ok);
            return Outcome{Json{{"checks", checks}}, ok};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Outcome outcome = run();
        Json report{{"command", command}, {"inputs", inputs}, {"result", outcome.result}, {"ok", outcome.ok}};
        if (!outcome.certificates.is_null()) report["certificates"] = outcome.certificates;
        emit(report);
        return outcome.ok ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 3;
    } catch (const MathError& e) {
        std::cerr << "error: precondition violated: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
