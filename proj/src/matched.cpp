#include "crossext/matched.hpp"

#include <algorithm>
#include <sstream>

namespace crossext::matched {

namespace {

std::string tup(std::initializer_list<int> xs) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int x : xs) {
        if (!first) os << ",";
        os << x;
        first = false;
    }
    os << ")";
    return os.str();
}

} // namespace

void MatchedPair::check_shape() const {
    const int ng = G.order(), ns = Gamma.order();
    if (int(rhd.size()) != ns || int(lhd.size()) != ns)
        throw ValidationError("MatchedPair: action tables must have |Gamma| rows");
    for (int s = 0; s < ns; ++s) {
        if (int(rhd[s].size()) != ng || int(lhd[s].size()) != ng)
            throw ValidationError("MatchedPair: action table row has wrong length");
        for (int g = 0; g < ng; ++g) {
            if (rhd[s][g] < 0 || rhd[s][g] >= ng) throw ValidationError("MatchedPair: rhd out of range");
            if (lhd[s][g] < 0 || lhd[s][g] >= ns) throw ValidationError("MatchedPair: lhd out of range");
        }
    }
}

MatchedPair trivial_pair(const groups::CayleyGroup& g, const groups::CayleyGroup& gamma) {
    MatchedPair mp{g, gamma, {}, {}};
    mp.rhd.assign(gamma.order(), std::vector<int>(g.order()));
    mp.lhd.assign(gamma.order(), std::vector<int>(g.order()));
    for (int s = 0; s < gamma.order(); ++s)
        for (int x = 0; x < g.order(); ++x) {
            mp.rhd[s][x] = x;
            mp.lhd[s][x] = s;
        }
    return mp;
}

ValidationReport verify_matched_pair(const MatchedPair& mp) {
    mp.check_shape();
    ValidationReport rep;
    const auto& G = mp.G;
    const auto& Ga = mp.Gamma;
    const int ng = G.order(), ns = Ga.order();
    const int eg = G.identity(), es = Ga.identity();

    // rhd is a left Gamma-action on the set G
    for (int g = 0; g < ng; ++g)
        if (mp.rhd[es][g] != g) rep.fail("rhd-left-action", "e|>g != g at g=" + std::to_string(g));
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t)
            for (int g = 0; g < ng; ++g)
                if (mp.rhd[Ga.mul(s, t)][g] != mp.rhd[s][mp.rhd[t][g]])
                    rep.fail("rhd-left-action", "(st)|>g != s|>(t|>g) at " + tup({s, t, g}));

    // lhd is a right G-action on the set Gamma
    for (int s = 0; s < ns; ++s)
        if (mp.lhd[s][eg] != s) rep.fail("lhd-right-action", "s<|e != s at s=" + std::to_string(s));
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g)
            for (int h = 0; h < ng; ++h)
                if (mp.lhd[s][G.mul(g, h)] != mp.lhd[mp.lhd[s][g]][h])
                    rep.fail("lhd-right-action", "s<|(gh) != (s<|g)<|h at " + tup({s, g, h}));

    // unit conditions
    for (int s = 0; s < ns; ++s)
        if (mp.rhd[s][eg] != eg) rep.fail("rhd-unit", "s|>e != e at s=" + std::to_string(s));
    for (int g = 0; g < ng; ++g)
        if (mp.lhd[es][g] != es) rep.fail("lhd-unit", "e<|g != e at g=" + std::to_string(g));

    // compatibility: s |> gh = (s|>g)((s<|g)|>h)
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g)
            for (int h = 0; h < ng; ++h)
                if (mp.rhd[s][G.mul(g, h)] != G.mul(mp.rhd[s][g], mp.rhd[mp.lhd[s][g]][h]))
                    rep.fail("matched-rhd", "s|>(gh) identity fails at " + tup({s, g, h}));

    // compatibility: st <| g = (s <| (t|>g))(t <| g)
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t)
            for (int g = 0; g < ng; ++g)
                if (mp.lhd[Ga.mul(s, t)][g] != Ga.mul(mp.lhd[s][mp.rhd[t][g]], mp.lhd[t][g]))
                    rep.fail("matched-lhd", "(st)<|g identity fails at " + tup({s, t, g}));

    // bijectivity (implied by the action laws, but reported directly)
    for (int s = 0; s < ns; ++s) {
        std::vector<char> seen(ng, 0);
        for (int g = 0; g < ng; ++g)
            if (seen[mp.rhd[s][g]]++)
                rep.fail("rhd-bijective", "s|>- not a permutation at s=" + std::to_string(s) +
                                              ", repeated image " + std::to_string(mp.rhd[s][g]));
    }
    for (int g = 0; g < ng; ++g) {
        std::vector<char> seen(ns, 0);
        for (int s = 0; s < ns; ++s)
            if (seen[mp.lhd[s][g]]++)
                rep.fail("lhd-bijective", "-<|g not a permutation at g=" + std::to_string(g) +
                                              ", repeated image " + std::to_string(mp.lhd[s][g]));
    }
    return rep;
}

MatchedPair from_exact_factorization(const groups::CayleyGroup& l, const groups::Subgroup& g,
                                     const groups::Subgroup& gamma) {
    if (!groups::is_exact_factorization(l, g, gamma))
        throw ValidationError("from_exact_factorization: not an exact factorization");
    const int ng = g.order(), ns = gamma.order();
    // factorization table: ambient element -> (G index, Gamma index)
    std::vector<std::pair<int, int>> factor(l.order(), {-1, -1});
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ns; ++b) factor[l.mul(g.members[a], gamma.members[b])] = {a, b};

    MatchedPair mp{groups::subgroup_as_group(l, g), groups::subgroup_as_group(l, gamma), {}, {}};
    mp.rhd.assign(ns, std::vector<int>(ng));
    mp.lhd.assign(ns, std::vector<int>(ng));
    for (int s = 0; s < ns; ++s)
        for (int x = 0; x < ng; ++x) {
            auto [h, t] = factor[l.mul(gamma.members[s], g.members[x])];
            mp.rhd[s][x] = h;
            mp.lhd[s][x] = t;
        }
    ValidationReport rep = verify_matched_pair(mp);
    if (!rep.ok)
        throw ValidationError("from_exact_factorization: extracted pair invalid: " + rep.summary());
    return mp;
}

int BicrossedGroup::pair_index(int g, int s) const { return g * gamma_factor.order() + s; }

std::vector<int> bicrossed_candidate_table(const MatchedPair& mp) {
    mp.check_shape();
    const int ng = mp.G.order(), ns = mp.Gamma.order();
    const int n = ng * ns;
    auto idx = [&](int g, int s) { return g * ns + s; };
    std::vector<int> mul(std::size_t(n) * n);
    for (int g = 0; g < ng; ++g)
        for (int s = 0; s < ns; ++s)
            for (int h = 0; h < ng; ++h)
                for (int t = 0; t < ns; ++t)
                    mul[std::size_t(idx(g, s)) * n + idx(h, t)] =
                        idx(mp.G.mul(g, mp.rhd[s][h]), mp.Gamma.mul(mp.lhd[s][h], t));
    return mul;
}

namespace {

ValidationReport bicrossed_table_check(const std::vector<int>& mul, int n, int e) {
    ValidationReport rep;
    auto at = [&](int a, int b) { return mul[std::size_t(a) * n + b]; };
    for (int a = 0; a < n; ++a) {
        if (at(e, a) != a) rep.fail("identity", "e*x != x at x=" + std::to_string(a));
        if (at(a, e) != a) rep.fail("identity", "x*e != x at x=" + std::to_string(a));
    }
    for (int a = 0; a < n && rep.witnesses.size() < 64; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    rep.fail("associativity", tup({a, b, c}));
    for (int a = 0; a < n; ++a) {
        bool has = false;
        for (int b = 0; b < n; ++b)
            if (at(a, b) == e && at(b, a) == e) has = true;
        if (!has) rep.fail("inverse", "no two-sided inverse for " + std::to_string(a));
    }
    return rep;
}

} // namespace

ValidationReport bicrossed_candidate_group_check(const MatchedPair& mp) {
    const int ns = mp.Gamma.order();
    const int n = mp.G.order() * ns;
    const int e = mp.G.identity() * ns + mp.Gamma.identity();
    return bicrossed_table_check(bicrossed_candidate_table(mp), n, e);
}

BicrossedGroup bicrossed_group(const MatchedPair& mp) {
    ValidationReport mrep = verify_matched_pair(mp);
    if (!mrep.ok) throw ValidationError("bicrossed_group: invalid matched pair: " + mrep.summary());
    const int ng = mp.G.order(), ns = mp.Gamma.order();
    const int n = ng * ns;
    const int e = mp.G.identity() * ns + mp.Gamma.identity();
    std::vector<int> mul = bicrossed_candidate_table(mp);
    std::vector<std::string> names;
    names.reserve(n);
    for (int g = 0; g < ng; ++g)
        for (int s = 0; s < ns; ++s) names.push_back("(" + mp.G.name(g) + "," + mp.Gamma.name(s) + ")");
    groups::CayleyGroup grp(n, std::move(mul), e, std::move(names));
    ValidationReport grep = grp.validate();
    if (!grep.ok)
        throw ValidationError("bicrossed_group: internal consistency failure: " + grep.summary());

    BicrossedGroup out{std::move(grp), {}, {}};
    for (int g = 0; g < ng; ++g) out.g_factor.members.push_back(g * ns + mp.Gamma.identity());
    for (int s = 0; s < ns; ++s) out.gamma_factor.members.push_back(mp.G.identity() * ns + s);
    std::sort(out.g_factor.members.begin(), out.g_factor.members.end());
    std::sort(out.gamma_factor.members.begin(), out.gamma_factor.members.end());
    if (!groups::is_exact_factorization(out.group, out.g_factor, out.gamma_factor))
        throw ValidationError("bicrossed_group: factors do not give an exact factorization");
    return out;
}

std::vector<Factorization> enumerate_exact_factorizations(const groups::CayleyGroup& l,
                                                          int order_bound) {
    if (l.order() > order_bound)
        throw SizeBoundError("enumerate_exact_factorizations: order exceeds bound " +
                             std::to_string(order_bound));
    std::vector<groups::Subgroup> subs = groups::all_subgroups(l);
    std::vector<Factorization> out;
    for (const auto& g : subs)
        for (const auto& gamma : subs)
            if (groups::is_exact_factorization(l, g, gamma))
                out.push_back({g, gamma, from_exact_factorization(l, g, gamma)});
    return out;
}

std::optional<std::vector<int>> embedding_isomorphism(const groups::CayleyGroup& l,
                                                      const groups::Subgroup& g,
                                                      const groups::Subgroup& gamma,
                                                      const MatchedPair& mp) {
    const int ng = g.order(), ns = gamma.order();
    if (ng * ns != l.order()) return std::nullopt;
    std::vector<int> image(std::size_t(ng) * ns);
    std::vector<char> hit(l.order(), 0);
    for (int x = 0; x < ng; ++x)
        for (int s = 0; s < ns; ++s) {
            int v = l.mul(g.members[x], gamma.members[s]);
            image[std::size_t(x) * ns + s] = v;
            if (hit[v]++) return std::nullopt;
        }
    // homomorphism: phi((g,s)(h,t)) = phi(g,s) phi(h,t)
    for (int x = 0; x < ng; ++x)
        for (int s = 0; s < ns; ++s)
            for (int h = 0; h < ng; ++h)
                for (int t = 0; t < ns; ++t) {
                    int pg = mp.G.mul(x, mp.rhd[s][h]);
                    int ps = mp.Gamma.mul(mp.lhd[s][h], t);
                    if (image[std::size_t(pg) * ns + ps] !=
                        l.mul(image[std::size_t(x) * ns + s], image[std::size_t(h) * ns + t]))
                        return std::nullopt;
                }
    return image;
}

} // namespace crossext::matched
