/*
 * klr.cpp
 * -------
 * Command-line front end. Subcommands:
 *   datum   derive the integer symmetric matrix and vertex data of a quiver;
 *   verify  check every defining relation as a matrix identity and the
 *           commuting square between the polynomial and matrix actions;
 *   gdim    compare the closed-form graded dimension series against the
 *           randomized rank oracle, blockwise;
 *   cyclo   truncated generic-fiber dimensions of the vertex-polynomial
 *           quotient.
 *
 * Exit codes: 0 pass, 1 verification failure, 2 input error. JSON output is
 * deterministic given inputs and seeds (keys sorted, seeds echoed).
 */
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "klr/cyclotomic.hpp"
#include "klr/fixed_point.hpp"
#include "klr/graded_dim.hpp"
#include "klr/presentation.hpp"
#include "klr/quiver.hpp"

namespace {

using namespace klr;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json parse_inline_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(what + ": malformed JSON: " + e.what());
    }
}

RootVector alpha_of(const std::string& text, const Quiver& q) {
    return parse_root(parse_inline_json(text, "--alpha"), q);
}

ColorSequence sequence_of_names(const std::string& text, const Model& model,
                                const std::string& what) {
    nlohmann::json doc = parse_inline_json(text, what);
    if (!doc.is_array()) throw InputError(what + ": expected an array of vertex names");
    ColorSequence nu;
    for (const auto& item : doc) {
        if (!item.is_string()) throw InputError(what + ": expected vertex names");
        int i = model.quiver().vertex_index(item.get<std::string>());
        if (i < 0) throw InputError(what + ": unknown vertex '" + item.get<std::string>() + "'");
        nu.push_back(i);
    }
    for (const ColorSequence& s : model.sequences())
        if (s == nu) return nu;
    throw InputError(what + ": sequence does not arrange the chosen multiplicities");
}

void emit(const nlohmann::json& doc, const std::string& format, const std::string& text) {
    if (format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

// ---- datum --------------------------------------------------------------------

int run_datum(const std::string& path, const std::string& format) {
    Quiver q = parse_quiver_file(path);
    CartanDatum d = derive_datum(q);
    nlohmann::json doc;
    doc["command"] = "datum";
    doc["quiver"] = serialize_quiver(q);
    doc["matrix"] = d.a;
    doc["loops"] = d.loops;
    std::vector<int> real(d.real.begin(), d.real.end());
    doc["real"] = real;

    std::string text;
    text += "vertices:";
    for (const auto& v : q.vertices) text += " " + v;
    text += "\nmatrix:\n";
    for (const auto& row : d.a) {
        for (int v : row) text += "  " + std::to_string(v);
        text += "\n";
    }
    for (int i = 0; i < q.num_vertices(); ++i)
        text += q.vertices[i] + ": " + std::to_string(d.loops[i]) + " loop(s), " +
                (d.real[i] ? "real" : "imaginary") + "\n";
    emit(doc, format, text);
    return 0;
}

// ---- verify -------------------------------------------------------------------

int run_verify(const std::string& path, const std::string& alpha_text,
               const std::string& backend, std::uint64_t seed, int trials, int max_degree,
               const std::string& format) {
    Quiver q = parse_quiver_file(path);
    RootVector alpha = alpha_of(alpha_text, q);
    int cap = backend == "exact" ? 5 : 8;
    if (alpha.height() > cap)
        throw InputError("height " + std::to_string(alpha.height()) + " exceeds the " + backend +
                         " cap " + std::to_string(cap));
    Model model(q, alpha);
    Rng rng(seed);

    nlohmann::json instances = nlohmann::json::array();
    int checked = 0, failed = 0;
    nlohmann::json first_failure;
    std::string failure_text;
    for (const RelationInstance& rel : relation_catalogue(model)) {
        EqualityCertificate cert =
            backend == "exact"
                ? elements_equal_exact(model, rel.lhs, rel.rhs)
                : elements_equal_randomized(model, rel.lhs, rel.rhs, rng, trials);
        ++checked;
        nlohmann::json entry;
        entry["relation"] = rel.family;
        entry["nu"] = serialize_sequence(rel.nu, q);
        entry["t"] = rel.t;
        entry["k"] = rel.k;
        entry["status"] = cert.equal ? "verified" : "failed";
        entry["backend"] = backend;
        if (!cert.equal) {
            ++failed;
            entry["witness"] = cert.witness;
            if (first_failure.is_null()) {
                first_failure = entry;
                failure_text = rel.label + ": " + cert.witness;
            }
        }
        instances.push_back(entry);
    }

    CrossCheckReport cross = backend == "exact"
                                 ? cross_check_theorem(model, max_degree)
                                 : cross_check_theorem_randomized(model, max_degree, rng, trials);

    bool pass = failed == 0 && cross.ok;
    nlohmann::json doc;
    doc["command"] = "verify";
    doc["alpha"] = serialize_root(alpha, q);
    doc["backend"] = backend;
    doc["seeds"] = backend == "exact" ? nlohmann::json::array()
                                      : nlohmann::json::array({seed});
    doc["trials"] = backend == "exact" ? 0 : trials;
    doc["relations"] = {{"checked", checked}, {"failed", failed}};
    doc["relations"]["first_failure"] = first_failure;
    doc["instances"] = instances;
    doc["cross_check"] = {{"checked", cross.checked},
                          {"status", cross.ok ? "pass" : "fail"},
                          {"max_degree", max_degree}};
    if (!cross.ok) doc["cross_check"]["witness"] = cross.witness;
    doc["certificate"] = {{"check", "main-theorem"},
                          {"alpha", serialize_root(alpha, q)},
                          {"backend", backend},
                          {"points", backend == "exact" ? 0 : trials},
                          {"status", pass ? "pass" : "fail"}};
    doc["status"] = pass ? "pass" : "fail";

    std::string text;
    text += "relations: " + std::to_string(checked - failed) + "/" + std::to_string(checked) +
            " verified (" + backend + ")\n";
    if (failed > 0) text += "first failure: " + failure_text + "\n";
    text += "action cross-check: " + std::to_string(cross.checked) + " squares, " +
            std::string(cross.ok ? "all commute" : "FAILED at " + cross.witness) + "\n";
    if (backend == "randomized")
        text += "randomized backend: " + std::to_string(trials) +
                " shared points per identity, integer window [-2^31, 2^31]; a false pass "
                "needs every point on the difference's zero set\n";
    text += std::string("status: ") + (pass ? "pass" : "fail") + "\n";
    emit(doc, format, text);
    return pass ? 0 : 1;
}

// ---- gdim ---------------------------------------------------------------------

int run_gdim(const std::string& path, const std::string& alpha_text, int window,
             std::vector<std::uint64_t> seeds, const std::string& nu_out_text,
             const std::string& nu_in_text, const std::string& format) {
    Quiver q = parse_quiver_file(path);
    RootVector alpha = alpha_of(alpha_text, q);
    if (alpha.height() > 5)
        throw InputError("height " + std::to_string(alpha.height()) +
                         " exceeds the rank-oracle cap 5");
    Model model(q, alpha);
    if (seeds.empty()) seeds = {1, 2, 3};

    std::vector<ColorSequence> outs, ins;
    if (nu_out_text.empty())
        outs = model.sequences();
    else
        outs = {sequence_of_names(nu_out_text, model, "--nu-out")};
    if (nu_in_text.empty())
        ins = model.sequences();
    else
        ins = {sequence_of_names(nu_in_text, model, "--nu-in")};

    bool pass = true;
    nlohmann::json pairs = nlohmann::json::array();
    std::string text;
    for (const ColorSequence& out : outs)
        for (const ColorSequence& in : ins) {
            SeriesReport report = verify_series(model, out, in, window, seeds);
            pass = pass && report.all_match && report.seeds_agree;
            nlohmann::json entry;
            entry["nu_out"] = serialize_sequence(out, q);
            entry["nu_in"] = serialize_sequence(in, q);
            nlohmann::json series = nlohmann::json::array();
            nlohmann::json oracle = nlohmann::json::array();
            for (const auto& e : report.entries) {
                series.push_back({e.d, e.series});
                oracle.push_back({e.d, e.rank});
            }
            entry["series"] = series;
            entry["oracle"] = oracle;
            entry["match"] = report.all_match;
            entry["seeds_agree"] = report.seeds_agree;
            pairs.push_back(entry);

            text += serialize_sequence(out, q).dump() + " <- " +
                    serialize_sequence(in, q).dump() + ": ";
            for (const auto& e : report.entries)
                text += "q^" + std::to_string(e.d) + ":" + std::to_string(e.series) +
                        (e.match ? "" : "!=rank " + std::to_string(e.rank)) + " ";
            text += report.all_match ? "(oracle agrees)\n" : "(MISMATCH)\n";
        }

    nlohmann::json doc;
    doc["command"] = "gdim";
    doc["alpha"] = serialize_root(alpha, q);
    doc["window"] = window;
    doc["seeds"] = seeds;
    doc["pairs"] = pairs;
    doc["status"] = pass ? "pass" : "fail";
    text += std::string("status: ") + (pass ? "pass" : "fail") + "\n";
    emit(doc, format, text);
    return pass ? 0 : 1;
}

// ---- cyclo --------------------------------------------------------------------

int run_cyclo(const std::string& path, const std::string& alpha_text,
              const std::string& weight_text, int max_degree,
              std::vector<std::uint64_t> seeds, const std::string& format) {
    Quiver q = parse_quiver_file(path);
    RootVector alpha = alpha_of(alpha_text, q);
    if (alpha.height() > 4)
        throw InputError("height " + std::to_string(alpha.height()) +
                         " exceeds the quotient-dimension cap 4");
    if (max_degree > 10) throw InputError("--max-degree exceeds the cap 10");
    DominantWeight weight = parse_weight(parse_inline_json(weight_text, "--weight"), q);
    Model model(q, alpha);
    if (seeds.empty()) seeds = {1, 2, 3};

    CycloReport report = cyclotomic_dims(model, weight, max_degree, seeds);
    bool invariants_ok = true;
    for (const auto& e : report.entries)
        invariants_ok = invariants_ok && e.dim_quotient >= 0 && e.dim_quotient <= e.dim_full;
    bool pass = report.seeds_agree && invariants_ok;

    nlohmann::json degrees = nlohmann::json::array();
    std::string text;
    for (const auto& e : report.entries) {
        degrees.push_back({{"d", e.d},
                           {"full", e.dim_full},
                           {"ideal", e.dim_ideal},
                           {"quotient", e.dim_quotient}});
        if (e.dim_full != 0 || e.dim_ideal != 0)
            text += "d=" + std::to_string(e.d) + ": full " + std::to_string(e.dim_full) +
                    ", ideal " + std::to_string(e.dim_ideal) + ", quotient " +
                    std::to_string(e.dim_quotient) + "\n";
    }
    nlohmann::json doc;
    doc["command"] = "cyclo";
    doc["alpha"] = serialize_root(alpha, q);
    doc["weight"] = serialize_weight(weight, q);
    doc["max_degree"] = max_degree;
    doc["seeds"] = seeds;
    doc["degrees"] = degrees;
    doc["total_quotient"] = report.total_quotient;
    doc["seeds_agree"] = report.seeds_agree;
    doc["note"] = "generic-fiber dimensions: edge parameters specialized at random "
                  "rationals per seed, maxima over seeds";
    doc["status"] = pass ? "pass" : "fail";

    text += "total quotient dimension in window: " + std::to_string(report.total_quotient) +
            "\n";
    if (!report.seeds_agree) text += "WARNING: seeds disagree\n";
    text += std::string("status: ") + (pass ? "pass" : "fail") + "\n";
    emit(doc, format, text);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quiver Hecke algebra engine: datum, relation verification, graded "
                 "dimensions, vertex-polynomial quotients"};
    app.require_subcommand(1);

    std::string quiver_path, alpha_text, weight_text, nu_out_text, nu_in_text;
    std::string backend = "exact", format = "text";
    std::uint64_t seed = 12345;
    std::vector<std::uint64_t> seeds;
    int trials = 3, max_degree = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_alpha) {
        cmd->add_option("quiver", quiver_path, "quiver JSON file")->required();
        cmd->add_option("--format", format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        if (needs_alpha)
            cmd->add_option("--alpha", alpha_text, "multiplicities, e.g. '{\"i\":2}'")
                ->required();
    };

    CLI::App* datum = app.add_subcommand("datum", "derive the symmetric integer matrix");
    add_common(datum, false);

    CLI::App* verify = app.add_subcommand(
        "verify", "check defining relations and the action cross-check");
    add_common(verify, true);
    verify->add_option("--backend", backend, "exact|randomized")
        ->check(CLI::IsMember({"exact", "randomized"}));
    verify->add_option("--seed", seed, "randomized backend seed");
    verify->add_option("--trials", trials, "evaluation points per identity")
        ->check(CLI::PositiveNumber);
    verify->add_option("--max-degree", max_degree,
                       "grading-degree cap for cross-check monomials (default 6)");

    CLI::App* gdim = app.add_subcommand(
        "gdim", "graded dimension series vs the randomized rank oracle");
    add_common(gdim, true);
    gdim->add_option("--max-degree", max_degree,
                     "window width above the minimal degree (default 8)");
    gdim->add_option("--seed", seeds, "rank oracle seeds (repeatable; default 1 2 3)");
    gdim->add_option("--nu-out", nu_out_text, "restrict output color, e.g. '[\"i\",\"j\"]'");
    gdim->add_option("--nu-in", nu_in_text, "restrict input color");

    CLI::App* cyclo = app.add_subcommand(
        "cyclo", "truncated quotient dimensions for a dominant weight");
    add_common(cyclo, true);
    cyclo->add_option("--weight", weight_text, "levels per vertex, e.g. '{\"i\":1}'")
        ->required();
    cyclo->add_option("--max-degree", max_degree, "top degree of the window (default 10)");
    cyclo->add_option("--seed", seeds, "specialization seeds (repeatable; default 1 2 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*datum) return run_datum(quiver_path, format);
        if (*verify)
            return run_verify(quiver_path, alpha_text, backend, seed, trials,
                              max_degree < 0 ? 6 : max_degree, format);
        if (*gdim)
            return run_gdim(quiver_path, alpha_text, max_degree < 0 ? 8 : max_degree, seeds,
                            nu_out_text, nu_in_text, format);
        if (*cyclo)
            return run_cyclo(quiver_path, alpha_text, weight_text,
                             max_degree < 0 ? 10 : max_degree, seeds, format);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
