#include <doctest.h>

#include <map>
#include <random>

#include "crossext/hopf.hpp"

using namespace crossext;
using namespace crossext::groups;
using namespace crossext::hopf;

namespace {

matched::MatchedPair s3_pair() {
    matched::MatchedPair mp{cyclic_group(2), cyclic_group(3), {}, {}};
    mp.rhd = {{0, 1}, {0, 1}, {0, 1}};
    mp.lhd = {{0, 0}, {1, 2}, {2, 1}};
    return mp;
}

// unit-vector columns at the given H-basis indices
QMatrix basis_columns(int dim, const std::vector<int>& idx) {
    QMatrix b(dim, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j) b.at(idx[j], j) = 1;
    return b;
}

// coaction of the tensor product of two comodules: (v (x) w) -> v0 (x) w0 (x) v1 w1
QMatrix comodule_tensor(const HopfAlgebra& h, const QMatrix& cv, const QMatrix& cw) {
    const int d = h.dim;
    const int nv = cv.cols, nw = cw.cols;
    QMatrix out(nv * nw * d, nv * nw);
    for (int j1 = 0; j1 < nv; ++j1)
        for (int j2 = 0; j2 < nw; ++j2)
            for (int i1 = 0; i1 < nv; ++i1)
                for (int a = 0; a < d; ++a) {
                    const Q& c1 = cv.at(i1 * d + a, j1);
                    if (c1 == 0) continue;
                    for (int i2 = 0; i2 < nw; ++i2)
                        for (int b = 0; b < d; ++b) {
                            const Q& c2 = cw.at(i2 * d + b, j2);
                            if (c2 == 0) continue;
                            for (const auto& [z, w] : h.m[std::size_t(a) * d + b])
                                out.at((i1 * nw + i2) * d + z, j1 * nw + j2) += c1 * c2 * w;
                        }
                }
    return out;
}

} // namespace

TEST_CASE("verify_hopf_axioms") {
    SUBCASE("group algebra of C2 is valid") {
        CHECK(verify_hopf_axioms(group_algebra(cyclic_group(2))).ok);
    }
    SUBCASE("dual of kS3 is valid") {
        CHECK(verify_hopf_axioms(dual_group_algebra(symmetric_group(3))).ok);
    }
    SUBCASE("corrupted antipode reported") {
        HopfAlgebra h = group_algebra(cyclic_group(3));
        for (int i = 0; i < 3; ++i) h.antipode[i] = {{i, Q(1)}}; // identity instead of inversion
        auto rep = verify_hopf_axioms(h);
        CHECK_FALSE(rep.ok);
        bool anti = false;
        for (auto& w : rep.witnesses)
            if (w.check == "antipode") anti = true;
        CHECK(anti);
    }
}

TEST_CASE("group algebra duality") {
    SUBCASE("k^{C2} has the two expected group-like elements") {
        HopfAlgebra k = dual_group_algebra(cyclic_group(2));
        // 1 = e0 + e1 and e0 - e1 are group-like: Delta(v) = v (x) v
        for (auto v : {QVec{{0, Q(1)}, {1, Q(1)}}, QVec{{0, Q(1)}, {1, Q(-1)}}}) {
            std::map<int, Q> dv;
            for (const auto& [i, c] : v)
                for (const auto& [jk, w] : k.delta[i]) {
                    dv[jk] += c * w;
                    if (dv[jk] == 0) dv.erase(jk);
                }
            std::map<int, Q> vv;
            for (const auto& [i, a] : v)
                for (const auto& [j, b] : v) {
                    vv[i * 2 + j] += a * b;
                    if (vv[i * 2 + j] == 0) vv.erase(i * 2 + j);
                }
            CHECK(dv == vv);
        }
    }
    SUBCASE("k^{S3} commutative but not cocommutative") {
        HopfAlgebra k = dual_group_algebra(symmetric_group(3));
        CHECK(is_commutative(k));
        CHECK_FALSE(is_cocommutative(k));
    }
    SUBCASE("double dual is the identity on kS3 tensors") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        HopfAlgebra dd = dual_hopf(dual_hopf(h));
        CHECK(dd.m == h.m);
        CHECK(dd.unit == h.unit);
        CHECK(dd.delta == h.delta);
        CHECK(dd.counit == h.counit);
        CHECK(dd.antipode == h.antipode);
    }
    SUBCASE("commutativity swaps under duality") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        CHECK(is_commutative(dual_hopf(h)) == is_cocommutative(h));
        CHECK(is_cocommutative(dual_hopf(h)) == is_commutative(h));
    }
}

TEST_CASE("kac_bicrossed") {
    SUBCASE("trivial pair on (C2, C2): dim 4, commutative and cocommutative") {
        HopfAlgebra h = kac_bicrossed(matched::trivial_pair(cyclic_group(2), cyclic_group(2)));
        CHECK(h.dim == 4);
        CHECK(is_commutative(h));
        CHECK(is_cocommutative(h));
        CHECK(verify_hopf_axioms(h).ok);
    }
    SUBCASE("S3 instance: dim 6, cocommutative, not commutative") {
        HopfAlgebra h = kac_bicrossed(s3_pair());
        CHECK(h.dim == 6);
        CHECK(is_cocommutative(h));
        CHECK_FALSE(is_commutative(h));
    }
    SUBCASE("degenerate factors reduce to group algebras and their duals") {
        HopfAlgebra a = kac_bicrossed(matched::trivial_pair(cyclic_group(2), cyclic_group(1)));
        CHECK(a.dim == 2);
        CHECK(is_cocommutative(a)); // kC2
        HopfAlgebra b = kac_bicrossed(matched::trivial_pair(cyclic_group(1), cyclic_group(3)));
        CHECK(b.dim == 3);
        CHECK(is_commutative(b)); // k^{C3}
        CHECK(verify_hopf_axioms(a).ok);
        CHECK(verify_hopf_axioms(b).ok);
    }
    SUBCASE("invalid pair rejected") {
        matched::MatchedPair mp = s3_pair();
        mp.lhd = {{0, 0}, {1, 2}, {2, 2}};
        CHECK_THROWS_AS(kac_bicrossed(mp), ValidationError);
        // the candidate tensors exist but fail the axiom scan
        CHECK_FALSE(verify_hopf_axioms(kac_bicrossed_candidate(mp), true).ok);
    }
}

TEST_CASE("exact_sequence_check") {
    SUBCASE("canonical sequence of the S3 instance") {
        matched::MatchedPair mp = s3_pair();
        HopfAlgebra h = kac_bicrossed(mp);
        KacSequence seq = canonical_kac_sequence(mp, h);
        CHECK(exact_sequence_check(h, seq.sub, seq.inj, seq.quot, seq.proj).ok);
    }
    SUBCASE("trivial subalgebra sequence k -> k -> H -> H -> k") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        HopfAlgebra k1 = group_algebra(cyclic_group(1));
        QMatrix inj(h.dim, 1);
        inj.at(h.unit[0].first, 0) = 1;
        CHECK(exact_sequence_check(h, k1, inj, h, QMatrix::identity(h.dim)).ok);
    }
    SUBCASE("non-coinvariant line fails condition (c)") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        HopfAlgebra k1 = group_algebra(cyclic_group(1));
        QMatrix inj(h.dim, 1);
        inj.at(1, 0) = 1; // a non-identity group element
        auto rep = exact_sequence_check(h, k1, inj, h, QMatrix::identity(h.dim));
        CHECK_FALSE(rep.ok);
        bool c_witness = false;
        for (auto& w : rep.witnesses)
            if (w.check == "(c) coinvariants") c_witness = true;
        CHECK(c_witness);
    }
}

TEST_CASE("half_braiding_sigma") {
    SUBCASE("trivial comodule gives the plain swap") {
        HopfAlgebra h = group_algebra(cyclic_group(2));
        QMatrix coact(1 * h.dim, 1);
        coact.at(0 * h.dim + 0, 0) = 1; // delta(v) = v (x) 1
        QMatrix sigma = half_braiding_sigma(h, coact);
        // sigma(b_p (x) v) = v (x) b_p: entry (0*d+p, p*1+0) = 1
        for (int p = 0; p < h.dim; ++p)
            for (int k = 0; k < h.dim; ++k) CHECK(sigma.at(k, p) == (p == k ? 1 : 0));
    }
    SUBCASE("sigma is invertible and multiplicative on tensor products (kS3)") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        QMatrix reg = regular_coaction(h);
        QMatrix sigma = half_braiding_sigma(h, reg);
        const int d = h.dim;
        CHECK(qrank(sigma) == d * d);

        // sigma_{V (x) W} = (id_V (x) sigma_W)(sigma_V (x) id_W) with V = W = regular
        QMatrix tensor_coact = comodule_tensor(h, reg, reg);
        CHECK(verify_comodule(h, tensor_coact).ok);
        QMatrix lhs = half_braiding_sigma(h, tensor_coact);
        // build the right-hand side on H (x) V (x) W
        const int n = d;
        QMatrix rhs(n * n * d, d * n * n);
        for (int p = 0; p < d; ++p)
            for (int j1 = 0; j1 < n; ++j1) {
                // sigma_V(b_p (x) v_{j1}) = sum v_i (x) b_k
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < d; ++k) {
                        const Q& c1 = sigma.at(i * d + k, p * n + j1);
                        if (c1 == 0) continue;
                        for (int j2 = 0; j2 < n; ++j2)
                            for (int i2 = 0; i2 < n; ++i2)
                                for (int k2 = 0; k2 < d; ++k2) {
                                    const Q& c2 = sigma.at(i2 * d + k2, k * n + j2);
                                    if (c2 == 0) continue;
                                    rhs.at((i * n + i2) * d + k2, (p * n + j1) * n + j2) += c1 * c2;
                                }
                    }
            }
        CHECK(qmat_equal(lhs, rhs));
    }
    SUBCASE("k^G regular comodule: sigma squared is the identity") {
        auto [sym, comm] = symmetric_central_algebra_test(dual_group_algebra(symmetric_group(3)));
        CHECK(sym);
        CHECK(comm);
    }
    SUBCASE("kS3 regular comodule: sigma squared is not the identity") {
        auto [sym, comm] = symmetric_central_algebra_test(group_algebra(symmetric_group(3)));
        CHECK_FALSE(sym);
        CHECK_FALSE(comm);
    }
}

TEST_CASE("symmetric_central_algebra_test equivalence") {
    std::vector<HopfAlgebra> cases;
    cases.push_back(dual_group_algebra(cyclic_group(2)));
    cases.push_back(group_algebra(cyclic_group(6)));
    cases.push_back(kac_bicrossed(s3_pair()));
    for (const auto& h : cases) {
        auto [sym, comm] = symmetric_central_algebra_test(h);
        CHECK(sym == comm);
    }
}

TEST_CASE("verify_subnormal_series") {
    SUBCASE("k in kC3 in kS3 certified") {
        CayleyGroup s3 = symmetric_group(3);
        HopfAlgebra h = group_algebra(s3);
        int threecycle = -1;
        for (int x = 0; x < 6; ++x)
            if (s3.element_order(x) == 3) {
                threecycle = x;
                break;
            }
        Subgroup c3 = subgroup_closure(s3, {threecycle});
        std::vector<QMatrix> chain{basis_columns(6, c3.members), basis_columns(6, {s3.identity()})};
        SeriesCertificate cert = verify_subnormal_series(h, chain);
        REQUIRE(cert.ok);
        REQUIRE(cert.factors.size() == 2);
        // factors kC2 and kC3 are cocommutative (both happen to be commutative too)
        for (auto f : cert.factors)
            CHECK((f == FactorType::cocommutative || f == FactorType::both));
    }
    SUBCASE("k in k^{C3} in kac(S3 instance) certified") {
        matched::MatchedPair mp = s3_pair();
        HopfAlgebra h = kac_bicrossed(mp);
        // k^{Gamma} sits at e_s # e = index s*|G| + 0
        std::vector<int> sub_idx{0, 2, 4};
        std::vector<QMatrix> chain{basis_columns(6, sub_idx), QMatrix(6, 1)};
        // unit of H = sum_s e_s # e
        for (int s = 0; s < 3; ++s) chain[1].at(s * 2 + 0, 0) = 1;
        SeriesCertificate cert = verify_subnormal_series(h, chain);
        REQUIRE(cert.ok);
        REQUIRE(cert.factors.size() == 2);
    }
    SUBCASE("non-subalgebra chain rejected with a named step") {
        CayleyGroup s3 = symmetric_group(3);
        HopfAlgebra h = group_algebra(s3);
        // span{1, (01) + (02)} is not multiplicatively closed
        std::vector<int> odd;
        for (int x = 0; x < 6; ++x)
            if (s3.element_order(x) == 2) odd.push_back(x);
        QMatrix bad(6, 2);
        bad.at(s3.identity(), 0) = 1;
        bad.at(odd[0], 1) = 1;
        bad.at(odd[1], 1) = 1;
        std::vector<QMatrix> chain{bad, basis_columns(6, {s3.identity()})};
        SeriesCertificate cert = verify_subnormal_series(h, chain);
        CHECK_FALSE(cert.ok);
        CHECK(cert.failure.find("step 0") != std::string::npos);
    }
    SUBCASE("non-normal subgroup rejected") {
        CayleyGroup s3 = symmetric_group(3);
        HopfAlgebra h = group_algebra(s3);
        int transposition = -1;
        for (int x = 0; x < 6; ++x)
            if (s3.element_order(x) == 2) {
                transposition = x;
                break;
            }
        Subgroup c2 = subgroup_closure(s3, {transposition});
        std::vector<QMatrix> chain{basis_columns(6, c2.members), basis_columns(6, {s3.identity()})};
        SeriesCertificate cert = verify_subnormal_series(h, chain);
        CHECK_FALSE(cert.ok);
        CHECK(cert.failure.find("normal") != std::string::npos);
    }
}

TEST_CASE("upper_series_via_dual") {
    SUBCASE("kac(S3 instance) via its dual chain") {
        matched::MatchedPair mp = s3_pair();
        HopfAlgebra h = kac_bicrossed(mp);
        HopfAlgebra hd = dual_hopf(h);
        KacSequence seq = canonical_kac_sequence(mp, h);
        // dualizing k -> k^Gamma -> H -> kG -> k embeds (kG)^* by proj^T
        QMatrix projT(h.dim, seq.quot.dim);
        for (int i = 0; i < seq.proj.rows; ++i)
            for (int j = 0; j < seq.proj.cols; ++j) projT.at(j, i) = seq.proj.at(i, j);
        QMatrix unit_line(h.dim, 1);
        for (const auto& [i, c] : hd.unit) unit_line.at(i, 0) = c;
        SeriesCertificate cert = upper_series_via_dual(h, {projT, unit_line});
        CHECK(cert.ok);
    }
    SUBCASE("abelian group algebra with a refinement chain") {
        CayleyGroup c6 = cyclic_group(6);
        HopfAlgebra h = group_algebra(c6);
        HopfAlgebra hd = dual_hopf(h); // k^{C6}; a chain there: k in span of duals
        // dual of kC6 is commutative; chain k^{C6} >= (characters of C6/C3 pulled back) >= k
        // use the sub spanned by the indicator projections summed over cosets of <c^3>
        QMatrix mid(6, 2);
        for (int i = 0; i < 6; ++i) mid.at(i, i % 3 == 0 ? 0 : 1) = 0; // placeholder zeros
        // indicators of the subgroup {0,3} and its coset sums: e0+e3, e1+e4, e2+e5
        QMatrix sub(6, 3);
        sub.at(0, 0) = 1;
        sub.at(3, 0) = 1;
        sub.at(1, 1) = 1;
        sub.at(4, 1) = 1;
        sub.at(2, 2) = 1;
        sub.at(5, 2) = 1;
        QMatrix unit_line(6, 1);
        for (const auto& [i, c] : hd.unit) unit_line.at(i, 0) = c;
        SeriesCertificate cert = upper_series_via_dual(h, {sub, unit_line});
        CHECK(cert.ok);
    }
    SUBCASE("invalid dual chain propagates failure") {
        HopfAlgebra h = group_algebra(symmetric_group(3));
        QMatrix junk(6, 2);
        junk.at(0, 0) = 1;
        junk.at(1, 1) = 1;
        junk.at(2, 1) = 1;
        QMatrix unit_line(6, 1);
        for (const auto& [i, c] : dual_hopf(h).unit) unit_line.at(i, 0) = c;
        SeriesCertificate cert = upper_series_via_dual(h, {junk, unit_line});
        CHECK_FALSE(cert.ok);
    }
}

TEST_CASE("matched pair validity equals kac Hopf validity (random tables)") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        CayleyGroup g = cyclic_group(2 + int(rng() % 3));
        CayleyGroup gamma = cyclic_group(2 + int(rng() % 3));
        matched::MatchedPair mp{g, gamma, {}, {}};
        mp.rhd.assign(gamma.order(), std::vector<int>(g.order()));
        mp.lhd.assign(gamma.order(), std::vector<int>(g.order()));
        for (int s = 0; s < gamma.order(); ++s)
            for (int x = 0; x < g.order(); ++x) {
                mp.rhd[s][x] = int(rng() % g.order());
                mp.lhd[s][x] = int(rng() % gamma.order());
            }
        bool mp_ok = matched::verify_matched_pair(mp).ok;
        bool hopf_ok = verify_hopf_axioms(kac_bicrossed_candidate(mp), true).ok;
        CHECK(mp_ok == hopf_ok);
    }
}
