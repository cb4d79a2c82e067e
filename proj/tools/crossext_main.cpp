// crossext: batch front end for matched pairs, bicrossed products, Kac-type
// Hopf algebras, fusion rings and their gradings.
//
// Exit codes: 0 = success / property verified true, 1 = property verified
// false, 2 = operational error (parse failure, numerical failure, timeout).

#include <CLI11.hpp>

#include <iostream>

#include "crossext/json_io.hpp"

using namespace crossext;
using json = json_io::json;

namespace {

struct Options {
    std::uint64_t seed = 0;
    double tol_pivot = 1e-9;
    double tol_round = 1e-6;
    int timeout_ms = 10000;
    std::string format = "json";
    std::string out_path;

    linalg::Tolerance tolerance() const {
        linalg::Tolerance t;
        t.pivot_eps = tol_pivot;
        t.round_eps = tol_round;
        t.validate();
        return t;
    }
};

int emit(const Options& opt, const std::string& command,
         const std::vector<std::string>& inputs, json result, json witnesses, int exit_code) {
    json report = json_io::make_report(command, inputs, std::move(result), std::move(witnesses),
                                       opt.seed, opt.tolerance());
    std::string text =
        opt.format == "md" ? json_io::render_markdown(report) : report.dump(2) + "\n";
    if (!opt.out_path.empty()) json_io::write_file(opt.out_path, text);
    std::cout << text;
    return exit_code;
}

json load(const std::string& path) { return json_io::parse_text(json_io::read_file(path)); }

json grading_to_json(const rings::GradingMap& g) {
    json j;
    j["group_order"] = g.group.order();
    j["group_elements"] = g.group.element_names();
    j["deg"] = g.deg;
    return j;
}

int run_verify_matched_pair(const Options& opt, const std::string& file) {
    auto input = json_io::parse_matched_pair(load(file));
    ValidationReport rep = matched::verify_matched_pair(input.pair);
    json result{{"valid", rep.ok},
                {"G_order", input.pair.G.order()},
                {"Gamma_order", input.pair.Gamma.order()}};
    return emit(opt, "verify-matched-pair", {file}, result, json_io::witnesses_to_json(rep),
                rep.ok ? 0 : 1);
}

int run_factorize(const Options& opt, const std::string& file) {
    groups::CayleyGroup l = json_io::parse_group(load(file));
    auto facts = matched::enumerate_exact_factorizations(l);
    json list = json::array();
    for (const auto& f : facts) {
        json item;
        item["G_members"] = f.g_sub.members;
        item["Gamma_members"] = f.gamma_sub.members;
        item["G_order"] = f.g_sub.order();
        item["Gamma_order"] = f.gamma_sub.order();
        item["pair_valid"] = matched::verify_matched_pair(f.pair).ok;
        list.push_back(item);
    }
    json result{{"order", l.order()}, {"count", facts.size()}, {"factorizations", list}};
    return emit(opt, "factorize", {file}, result, json::array(), 0);
}

int run_bicrossed_group(const Options& opt, const std::string& file) {
    auto input = json_io::parse_matched_pair(load(file));
    matched::BicrossedGroup bg = matched::bicrossed_group(input.pair);
    json result;
    result["order"] = bg.group.order();
    result["abelian"] = bg.group.is_abelian();
    result["elements"] = bg.group.element_names();
    if (input.ambient) {
        auto iso = matched::embedding_isomorphism(*input.ambient, *input.g_sub, *input.gamma_sub,
                                                  input.pair);
        result["embeds_into_ambient"] = iso.has_value();
    }
    return emit(opt, "bicrossed-group", {file}, result, json::array(), 0);
}

int run_kac(const Options& opt, const std::string& file, bool fusion) {
    auto input = json_io::parse_matched_pair(load(file));
    ValidationReport mrep = matched::verify_matched_pair(input.pair);
    if (!mrep.ok)
        return emit(opt, "kac", {file}, json{{"valid", false}},
                    json_io::witnesses_to_json(mrep), 1);
    hopf::HopfAlgebra h = hopf::kac_bicrossed(input.pair);
    ValidationReport hrep = hopf::verify_hopf_axioms(h);
    hopf::KacSequence seq = hopf::canonical_kac_sequence(input.pair, h);
    ValidationReport erep = hopf::exact_sequence_check(h, seq.sub, seq.inj, seq.quot, seq.proj);
    json result;
    result["dim"] = h.dim;
    result["hopf_axioms"] = hrep.ok;
    result["exact_sequence"] = erep.ok;
    result["commutative"] = hopf::is_commutative(h);
    result["cocommutative"] = hopf::is_cocommutative(h);
    if (fusion) {
        repth::FusionData fd = repth::fusion_data_of_hopf(h, opt.seed, opt.tolerance());
        result["fusion_ring"] = json_io::based_ring_to_json(fd.ring);
        json dims = json::array();
        for (const auto& s : fd.simples) dims.push_back(s.dim);
        result["simple_dims"] = dims;
    }
    ValidationReport all = hrep;
    all.merge(erep);
    return emit(opt, "kac", {file}, result, json_io::witnesses_to_json(all),
                (hrep.ok && erep.ok) ? 0 : 1);
}

int run_equivariantize(const Options& opt, const std::string& file) {
    crossed::CrossedActionData d = json_io::parse_crossed(load(file));
    rings::BasedRing r = crossed::equivariantization_ring(d, opt.seed, opt.tolerance());
    auto dims = rings::fp_dimensions(r);
    double total = 0;
    for (double x : dims) total += x * x;
    json result;
    result["ring"] = json_io::based_ring_to_json(r);
    result["fp_dims"] = dims;
    result["fp_dim_squared_total"] = total;
    return emit(opt, "equivariantize", {file}, result, json::array(), 0);
}

int run_dual_ring(const Options& opt, const std::string& file) {
    crossed::CrossedActionData d = json_io::parse_crossed(load(file));
    auto [ring, grading] = crossed::dual_graded_ring(d);
    std::vector<char> hit(grading.group.order(), 0);
    for (int v : grading.deg) hit[v] = 1;
    bool faithful = true;
    for (char c : hit) faithful = faithful && c;
    json neutral = json::array();
    for (int i = 0; i < ring.size(); ++i)
        if (grading.deg[i] == grading.group.identity()) neutral.push_back(i);
    json result;
    result["ring"] = json_io::based_ring_to_json(ring);
    result["grading"] = grading_to_json(grading);
    result["faithful"] = faithful;
    result["neutral_component"] = neutral;
    return emit(opt, "dual-ring", {file}, result, json::array(), 0);
}

int run_nilpotency(const Options& opt, const std::string& file) {
    rings::BasedRing r = json_io::parse_based_ring(load(file));
    ValidationReport vrep = rings::verify_based_ring(r);
    if (!vrep.ok)
        return emit(opt, "nilpotency", {file}, json{{"valid_ring", false}},
                    json_io::witnesses_to_json(vrep), 2);
    rings::CentralSeries cs = rings::upper_central_series(r);
    json chain = json::array();
    for (const auto& c : cs.chain) chain.push_back(c);
    json result;
    result["nilpotent"] = cs.nilpotent;
    if (cs.nilpotent)
        result["class"] = *cs.nilpotency_class;
    else
        result["message"] =
            "not nilpotent, series stabilizes at step " + std::to_string(cs.chain.size());
    result["chain"] = chain;
    return emit(opt, "nilpotency", {file}, result, json::array(), cs.nilpotent ? 0 : 1);
}

int run_hopf_verify(const Options& opt, const std::string& file) {
    hopf::HopfAlgebra h = json_io::parse_hopf(load(file));
    ValidationReport rep = hopf::verify_hopf_axioms(h);
    json result{{"dim", h.dim},
                {"valid", rep.ok},
                {"commutative", hopf::is_commutative(h)},
                {"cocommutative", hopf::is_cocommutative(h)}};
    return emit(opt, "hopf-verify", {file}, result, json_io::witnesses_to_json(rep), rep.ok ? 0 : 1);
}

int run_subnormal_series(const Options& opt, const std::string& file, bool dual) {
    json j = load(file);
    hopf::HopfAlgebra h = json_io::parse_hopf(j.contains("hopf") ? j.at("hopf") : j);
    std::vector<hopf::QMatrix> chain;
    const json& cj = j.contains("chain") ? j.at("chain") : json(json::array());
    if (cj.is_string() && cj.get<std::string>() == "canonical") {
        if (!j.at("hopf").contains("kac"))
            throw ValidationError("canonical chain requires a kac input");
        auto input = json_io::parse_matched_pair(j.at("hopf").at("kac"));
        hopf::KacSequence seq = hopf::canonical_kac_sequence(input.pair, h);
        chain.push_back(seq.inj);
        hopf::QMatrix unit_line(h.dim, 1);
        for (const auto& [i, c] : h.unit) unit_line.at(i, 0) = c;
        chain.push_back(unit_line);
    } else {
        chain = json_io::parse_chain(cj, h.dim);
    }
    hopf::SeriesCertificate cert = dual ? hopf::upper_series_via_dual(h, chain)
                                        : hopf::verify_subnormal_series(h, chain);
    json result;
    result["certified"] = cert.ok;
    result["direction"] = dual ? "upper-via-dual" : "lower";
    if (cert.ok) {
        json factors = json::array();
        for (auto f : cert.factors) factors.push_back(hopf::factor_type_name(f));
        result["factors"] = factors;
    } else {
        result["failure"] = cert.failure;
    }
    return emit(opt, "subnormal-series", {file}, result, json::array(), cert.ok ? 0 : 1);
}

int run_char_sym(const Options& opt, const std::string& file) {
    hopf::HopfAlgebra h = json_io::parse_hopf(load(file));
    auto [sym, comm] = hopf::symmetric_central_algebra_test(h);
    json result{{"sigma_squared_identity", sym}, {"commutative", comm}, {"equivalent", sym == comm}};
    return emit(opt, "char-sym", {file}, result, json::array(), sym == comm ? 0 : 1);
}

int run_aut_grading(const Options& opt, const std::string& file) {
    json_io::AutGradingFile f = json_io::parse_aut_grading(load(file));
    repth::AutGradingResult res = repth::aut_grading(f.input, f.group);
    groups::Subgroup zg = groups::center(f.group);
    json result;
    result["grading"] = grading_to_json(res.grading);
    result["neutral_support"] = res.neutral_support;
    result["center_order"] = zg.order();
    result["center_members"] = zg.members;
    json autos = json::array();
    for (const auto& a : res.automorphisms) autos.push_back(a);
    result["automorphisms"] = autos;
    return emit(opt, "aut-grading", {file}, result, json::array(), 0);
}

int run_ring_iso(const Options& opt, const std::string& file_a, const std::string& file_b) {
    rings::BasedRing a = json_io::parse_based_ring(load(file_a));
    rings::BasedRing b = json_io::parse_based_ring(load(file_b));
    rings::IsoResult res = rings::based_ring_isomorphism(a, b, opt.timeout_ms);
    json result;
    result["isomorphic"] = res.status == rings::IsoStatus::found;
    if (res.status == rings::IsoStatus::found)
        result["bijection"] = res.bijection;
    else
        result["detail"] = "search exhausted without a structure-preserving bijection";
    return emit(opt, "ring-iso", {file_a, file_b}, result, json::array(),
                res.status == rings::IsoStatus::found ? 0 : 1);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational toolkit for matched pairs of groups, bicrossed products,\n"
                 "Kac-type Hopf algebras, crossed actions and graded fusion rings"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "random seed for decompositions");
    app.add_option("--tol-pivot", opt.tol_pivot, "pivot acceptance threshold");
    app.add_option("--tol-round", opt.tol_round, "integrality rounding gate");
    app.add_option("--timeout-ms", opt.timeout_ms, "search budget for ring-iso");
    app.add_option("--format", opt.format, "report format: json | md")
        ->check(CLI::IsMember({"json", "md"}));
    app.add_option("--out", opt.out_path, "also write the report to this path");

    std::string file, file_b;
    bool fusion = false, dual = false;

    auto* c1 = app.add_subcommand("verify-matched-pair", "check the matched-pair axioms");
    c1->add_option("file", file)->required();
    auto* c2 = app.add_subcommand("factorize", "enumerate exact factorizations of a group");
    c2->add_option("file", file)->required();
    auto* c3 = app.add_subcommand("bicrossed-group", "build the group G |><| Gamma");
    c3->add_option("file", file)->required();
    auto* c4 = app.add_subcommand("kac", "build and verify the bicrossed product Hopf algebra");
    c4->add_option("file", file)->required();
    c4->add_flag("--fusion", fusion, "also extract the fusion ring of its modules");
    auto* c5 = app.add_subcommand("equivariantize", "fusion ring of the crossed-action equivariantization");
    c5->add_option("file", file)->required();
    auto* c6 = app.add_subcommand("dual-ring", "the G |><| Gamma-graded dual ring");
    c6->add_option("file", file)->required();
    auto* c7 = app.add_subcommand("nilpotency", "upper central series of a based ring");
    c7->add_option("file", file)->required();
    auto* c8 = app.add_subcommand("hopf-verify", "check the Hopf algebra axioms");
    c8->add_option("file", file)->required();
    auto* c9 = app.add_subcommand("subnormal-series", "certify a (lower) subnormal series");
    c9->add_option("file", file)->required();
    c9->add_flag("--dual", dual, "certify upper semisolvability through the dual");
    auto* c10 = app.add_subcommand("char-sym", "half-braiding symmetry vs commutativity");
    c10->add_option("file", file)->required();
    auto* c11 = app.add_subcommand("aut-grading", "automorphism grading from half-braiding blocks");
    c11->add_option("file", file)->required();
    auto* c12 = app.add_subcommand("ring-iso", "based-ring isomorphism search");
    c12->add_option("file_a", file)->required();
    c12->add_option("file_b", file_b)->required();

    for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c1->parsed()) return run_verify_matched_pair(opt, file);
        if (c2->parsed()) return run_factorize(opt, file);
        if (c3->parsed()) return run_bicrossed_group(opt, file);
        if (c4->parsed()) return run_kac(opt, file, fusion);
        if (c5->parsed()) return run_equivariantize(opt, file);
        if (c6->parsed()) return run_dual_ring(opt, file);
        if (c7->parsed()) return run_nilpotency(opt, file);
        if (c8->parsed()) return run_hopf_verify(opt, file);
        if (c9->parsed()) return run_subnormal_series(opt, file, dual);
        if (c10->parsed()) return run_char_sym(opt, file);
        if (c11->parsed()) return run_aut_grading(opt, file);
        if (c12->parsed()) return run_ring_iso(opt, file, file_b);
    } catch (const TimeoutError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
