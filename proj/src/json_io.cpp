#include "crossext/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crossext/error.hpp"
#include "crossext/report.hpp"

namespace crossext::json_io {

namespace {

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

const json& require(const json& j, const char* field) {
    if (!j.contains(field))
        throw ParseError(std::string("missing field \"") + field + "\"");
    return j.at(field);
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("JSON parse error: ") + e.what());
    }
}

groups::CayleyGroup parse_group(const json& j) {
    if (!j.is_object()) throw ParseError("group: expected an object");
    int degree = require(j, "degree").get<int>();
    std::vector<std::vector<int>> gens;
    for (const auto& g : require(j, "generators")) gens.push_back(g.get<std::vector<int>>());
    int bound = j.value("order_bound", groups::kDefaultOrderBound);
    return groups::from_permutation_generators(degree, gens, bound);
}

namespace {

groups::Subgroup parse_subgroup(const groups::CayleyGroup& ambient, const json& gens) {
    std::vector<int> seeds;
    for (const auto& g : gens) {
        if (g.is_number_integer()) {
            seeds.push_back(g.get<int>());
        } else {
            // a permutation image array, matched against element names
            std::vector<int> img = g.get<std::vector<int>>();
            std::ostringstream os;
            os << "[";
            for (std::size_t i = 0; i < img.size(); ++i) os << (i ? " " : "") << img[i];
            os << "]";
            int found = -1;
            for (int x = 0; x < ambient.order(); ++x)
                if (ambient.name(x) == os.str()) found = x;
            if (found < 0) throw ParseError("subgroup generator " + os.str() + " not in the group");
            seeds.push_back(found);
        }
    }
    return groups::subgroup_closure(ambient, seeds);
}

} // namespace

MatchedPairInput parse_matched_pair(const json& j) {
    if (!j.is_object()) throw ParseError("matched pair: expected an object");
    MatchedPairInput out;
    if (j.contains("ambient")) {
        groups::CayleyGroup l = parse_group(j.at("ambient"));
        groups::Subgroup g = parse_subgroup(l, require(j, "G_gens"));
        groups::Subgroup gamma = parse_subgroup(l, require(j, "Gamma_gens"));
        out.pair = matched::from_exact_factorization(l, g, gamma);
        out.ambient = std::move(l);
        out.g_sub = std::move(g);
        out.gamma_sub = std::move(gamma);
        return out;
    }
    matched::MatchedPair mp{parse_group(require(j, "G")), parse_group(require(j, "Gamma")), {}, {}};
    for (const auto& row : require(j, "rhd")) mp.rhd.push_back(row.get<std::vector<int>>());
    for (const auto& row : require(j, "lhd")) mp.lhd.push_back(row.get<std::vector<int>>());
    mp.check_shape();
    out.pair = std::move(mp);
    return out;
}

rings::BasedRing parse_based_ring(const json& j) {
    if (!j.is_object()) throw ParseError("based ring: expected an object");
    std::vector<std::string> labels;
    for (const auto& l : require(j, "labels")) labels.push_back(l.get<std::string>());
    int unit = require(j, "unit").get<int>();
    std::vector<int> dual = require(j, "dual").get<std::vector<int>>();
    std::vector<std::array<int, 4>> entries;
    for (const auto& e : require(j, "N")) {
        if (!e.is_array() || e.size() != 4) throw ParseError("based ring: N entries are [x,y,z,m]");
        entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
    }
    return rings::BasedRing::from_sparse(std::move(labels), unit, std::move(dual), entries);
}

json based_ring_to_json(const rings::BasedRing& r) {
    json j;
    j["labels"] = r.labels;
    j["unit"] = r.unit;
    j["dual"] = r.dual;
    json entries = json::array();
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            for (auto [z, m] : r.product(x, y)) entries.push_back({x, y, z, m});
    j["N"] = entries;
    return j;
}

hopf::Q parse_rational(const json& j) {
    if (j.is_number_integer()) return hopf::Q(j.get<long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        try {
            hopf::Q q(s);
            q.canonicalize();
            return q;
        } catch (const std::exception&) {
            throw ParseError("bad rational literal: " + s);
        }
    }
    throw ParseError("rational entries must be integers or \"p/q\" strings");
}

std::string rational_to_string(const hopf::Q& q) { return q.get_str(); }

hopf::HopfAlgebra parse_hopf(const json& j) {
    if (!j.is_object()) throw ParseError("hopf: expected an object");
    if (j.contains("group_algebra")) return hopf::group_algebra(parse_group(j.at("group_algebra")));
    if (j.contains("dual_group_algebra"))
        return hopf::dual_group_algebra(parse_group(j.at("dual_group_algebra")));
    if (j.contains("kac")) return hopf::kac_bicrossed(parse_matched_pair(j.at("kac")).pair);

    hopf::HopfAlgebra h;
    h.dim = require(j, "dim").get<int>();
    const int d = h.dim;
    h.m.assign(std::size_t(d) * d, {});
    h.delta.assign(d, {});
    h.counit.assign(d, hopf::Q(0));
    h.antipode.assign(d, {});
    for (const auto& e : require(j, "m")) {
        // [i, j, k, coeff]: b_i b_j contains coeff * b_k
        int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        h.m[std::size_t(i) * d + jj].push_back({k, parse_rational(e[3])});
    }
    for (const auto& e : require(j, "u")) h.unit.push_back({e[0].get<int>(), parse_rational(e[1])});
    for (const auto& e : require(j, "delta")) {
        // [i, j, k, coeff]: Delta(b_i) contains coeff * b_j (x) b_k
        int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        h.delta[i].push_back({jj * d + k, parse_rational(e[3])});
    }
    for (const auto& e : require(j, "counit")) h.counit[e[0].get<int>()] = parse_rational(e[1]);
    for (const auto& e : require(j, "s")) {
        int i = e[0].get<int>(), jj = e[1].get<int>();
        h.antipode[i].push_back({jj, parse_rational(e[2])});
    }
    auto sort_sparse = [](hopf::QVec& v) { std::sort(v.begin(), v.end()); };
    for (auto& v : h.m) sort_sparse(v);
    sort_sparse(h.unit);
    for (auto& v : h.delta) sort_sparse(v);
    for (auto& v : h.antipode) sort_sparse(v);
    h.basis_names.clear();
    for (int i = 0; i < d; ++i) h.basis_names.push_back("b" + std::to_string(i));
    h.check_shape();
    return h;
}

json hopf_to_json(const hopf::HopfAlgebra& h) {
    json j;
    j["dim"] = h.dim;
    json m = json::array();
    for (int i = 0; i < h.dim; ++i)
        for (int jj = 0; jj < h.dim; ++jj)
            for (const auto& [k, c] : h.m[std::size_t(i) * h.dim + jj])
                m.push_back({i, jj, k, rational_to_string(c)});
    j["m"] = m;
    json u = json::array();
    for (const auto& [i, c] : h.unit) u.push_back({i, rational_to_string(c)});
    j["u"] = u;
    json delta = json::array();
    for (int i = 0; i < h.dim; ++i)
        for (const auto& [jk, c] : h.delta[i])
            delta.push_back({i, jk / h.dim, jk % h.dim, rational_to_string(c)});
    j["delta"] = delta;
    json counit = json::array();
    for (int i = 0; i < h.dim; ++i)
        if (h.counit[i] != 0) counit.push_back({i, rational_to_string(h.counit[i])});
    j["counit"] = counit;
    json s = json::array();
    for (int i = 0; i < h.dim; ++i)
        for (const auto& [jj, c] : h.antipode[i]) s.push_back({i, jj, rational_to_string(c)});
    j["s"] = s;
    return j;
}

crossed::CrossedActionData parse_crossed(const json& j) {
    if (!j.is_object()) throw ParseError("crossed action: expected an object");
    if (!j.contains("ring")) {
        // a bare matched pair file yields the pointed crossed action
        const json& pj = j.contains("matched_pair") ? j.at("matched_pair") : j;
        return crossed::pointed_crossed_from_matched_pair(parse_matched_pair(pj).pair);
    }
    crossed::CrossedActionData d{parse_matched_pair(require(j, "matched_pair")).pair,
                                 parse_based_ring(require(j, "ring")),
                                 require(j, "deg").get<std::vector<int>>(),
                                 {}};
    for (const auto& row : require(j, "rho")) d.rho.push_back(row.get<std::vector<int>>());
    d.check_shape();
    return d;
}

std::vector<hopf::QMatrix> parse_chain(const json& j, int dim) {
    std::vector<hopf::QMatrix> chain;
    for (const auto& step : j) {
        if (!step.is_array() || step.empty()) throw ParseError("chain step must list basis vectors");
        hopf::QMatrix b(dim, int(step.size()));
        for (int c = 0; c < int(step.size()); ++c) {
            const auto& vec = step[c];
            if (int(vec.size()) != dim) throw ParseError("chain vector has wrong length");
            for (int i = 0; i < dim; ++i) b.at(i, c) = parse_rational(vec[i]);
        }
        chain.push_back(std::move(b));
    }
    return chain;
}

AutGradingFile parse_aut_grading(const json& j) {
    if (!j.is_object()) throw ParseError("aut grading: expected an object");
    if (j.contains("vector_model")) {
        AutGradingFile f{parse_group(j.at("vector_model")), {}};
        f.input = repth::vector_model_input(f.group);
        return f;
    }
    AutGradingFile f{parse_group(require(j, "group")), {}};
    f.input.invertible_blocks = require(j, "invertible_blocks").get<std::vector<int>>();
    for (const auto& row : require(j, "sigma_blocks"))
        f.input.sigma_blocks.push_back(row.get<std::vector<int>>());
    if (j.contains("ring")) f.input.ring = parse_based_ring(j.at("ring"));
    return f;
}

json module_to_json(const repth::HModule& m) {
    json j;
    j["dim"] = m.dim;
    json action = json::array();
    for (const auto& a : m.action) {
        json rows = json::array();
        for (int i = 0; i < a.rows(); ++i) {
            json row = json::array();
            for (int k = 0; k < a.cols(); ++k) row.push_back({a(i, k).real(), a(i, k).imag()});
            rows.push_back(row);
        }
        action.push_back(rows);
    }
    j["action"] = action;
    return j;
}

repth::HModule parse_module(const json& j, int algebra_dim) {
    repth::HModule m;
    m.dim = require(j, "dim").get<int>();
    for (const auto& mat : require(j, "action")) {
        linalg::CMatrix a(m.dim, m.dim);
        if (int(mat.size()) != m.dim) throw ParseError("module action matrix has wrong row count");
        for (int i = 0; i < m.dim; ++i)
            for (int k = 0; k < m.dim; ++k) {
                const auto& cell = mat[i][k];
                a(i, k) = cell.is_array() ? linalg::cplx(cell[0].get<double>(), cell[1].get<double>())
                                          : linalg::cplx(cell.get<double>(), 0.0);
            }
        m.action.push_back(std::move(a));
    }
    m.check_shape(algebra_dim);
    return m;
}

json witnesses_to_json(const ValidationReport& rep) {
    json w = json::array();
    for (const auto& x : rep.witnesses) w.push_back({{"check", x.check}, {"detail", x.detail}});
    return w;
}

json make_report(const std::string& command, const std::vector<std::string>& input_paths,
                 json result, json witnesses, std::uint64_t seed, const linalg::Tolerance& tol) {
    json rep;
    rep["command"] = command;
    rep["inputs"] = input_paths;
    rep["result"] = std::move(result);
    rep["witnesses"] = std::move(witnesses);
    json prov;
    json hashes = json::array();
    for (const auto& p : input_paths)
        hashes.push_back({{"path", p}, {"fnv1a", fnv1a_hex(read_file(p))}});
    prov["inputs"] = hashes;
    prov["seed"] = seed;
    prov["tolerances"] = {{"pivot_eps", tol.pivot_eps},
                          {"round_eps", tol.round_eps},
                          {"cluster_eps", tol.cluster_eps}};
    prov["version"] = version_string();
    rep["provenance"] = prov;
    return rep;
}

namespace {

void render_value(std::ostringstream& os, const json& v, int indent) {
    std::string pad(indent, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << "- " << it.key() << ":\n";
                render_value(os, it.value(), indent + 2);
            } else {
                os << pad << "- " << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (item.is_object() || item.is_array())
                os << pad << "- " << item.dump() << "\n";
            else
                os << pad << "- " << item.dump() << "\n";
        }
    } else {
        os << pad << v.dump() << "\n";
    }
}

} // namespace

std::string render_markdown(const json& report) {
    std::ostringstream os;
    os << "# crossext report: " << report.at("command").get<std::string>() << "\n\n";
    os << "## inputs\n";
    for (const auto& p : report.at("inputs")) os << "- " << p.get<std::string>() << "\n";
    os << "\n## result\n";
    render_value(os, report.at("result"), 0);
    os << "\n## witnesses\n";
    if (report.at("witnesses").empty())
        os << "none\n";
    else
        render_value(os, report.at("witnesses"), 0);
    os << "\n## provenance\n";
    render_value(os, report.at("provenance"), 0);
    return os.str();
}

} // namespace crossext::json_io
