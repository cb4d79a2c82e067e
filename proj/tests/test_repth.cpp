#include <doctest.h>

#include <cmath>

#include "crossext/repth.hpp"

using namespace crossext;
using namespace crossext::groups;
using namespace crossext::hopf;
using namespace crossext::repth;

namespace {

matched::MatchedPair s3_pair() {
    matched::MatchedPair mp{cyclic_group(2), cyclic_group(3), {}, {}};
    mp.rhd = {{0, 1}, {0, 1}, {0, 1}};
    mp.lhd = {{0, 0}, {1, 2}, {2, 1}};
    return mp;
}

QMatrix basis_columns(int dim, const std::vector<int>& idx) {
    QMatrix b(dim, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j) b.at(idx[j], j) = 1;
    return b;
}

// Hand character table oracle for K(Rep S3), frozen in test_rings as well.
rings::BasedRing k_rep_s3_oracle() {
    return rings::BasedRing::from_sparse(
        {"1", "sgn", "V"}, 0, {0, 1, 2},
        {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 2, 2, 1},
         {2, 0, 2, 1}, {2, 1, 2, 1}, {2, 2, 0, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}});
}

} // namespace

TEST_CASE("regular and trivial modules") {
    HopfAlgebra h = group_algebra(cyclic_group(2));
    HModule reg = regular_module(h);
    CHECK(reg.dim == 2);
    CHECK(verify_module(h, reg).ok);
    HModule triv = trivial_module(h);
    CHECK(verify_module(h, triv).ok);
    CHECK(hom_space(h, reg, triv) == 1);
}

TEST_CASE("restrict kS3 regular to kC3 decomposes as 2 copies of each character") {
    CayleyGroup s3 = symmetric_group(3);
    HopfAlgebra h = group_algebra(s3);
    int threecycle = -1;
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) == 3) {
            threecycle = x;
            break;
        }
    Subgroup c3 = subgroup_closure(s3, {threecycle});
    QMatrix sub = basis_columns(6, c3.members);
    HModule res = restrict_module(h, sub, regular_module(h));
    CHECK(res.dim == 6);
    HopfAlgebra hc3 = subhopf_restrict(h, sub);
    CHECK(verify_hopf_axioms(hc3).ok);
    Decomposition dec = decompose_module(hc3, res, 0);
    REQUIRE(dec.simples.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(dec.simples[i].dim == 1);
        CHECK(dec.multiplicities[i] == 2);
    }
}

TEST_CASE("restriction to the unit span is trivial") {
    HopfAlgebra h = group_algebra(symmetric_group(3));
    QMatrix sub(6, 1);
    for (const auto& [i, c] : h.unit) sub.at(i, 0) = c;
    HModule res = restrict_module(h, sub, regular_module(h));
    CHECK(res.action.size() == 1);
    CHECK(linalg::approx_equal(res.action[0], linalg::CMatrix::identity(6), 1e-12));
}

TEST_CASE("restrict_module rejects non-closed spans") {
    CayleyGroup s3 = symmetric_group(3);
    HopfAlgebra h = group_algebra(s3);
    std::vector<int> odd;
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) == 2) odd.push_back(x);
    QMatrix bad(6, 2);
    bad.at(s3.identity(), 0) = 1;
    bad.at(odd[0], 1) = 1;
    bad.at(odd[1], 1) = 1;
    CHECK_THROWS_AS(restrict_module(h, bad, regular_module(h)), ValidationError);
}

TEST_CASE("decompose regular kS3: dims (1,1,2) with matching multiplicities") {
    HopfAlgebra h = group_algebra(symmetric_group(3));
    Decomposition dec = decompose_module(h, regular_module(h), 0);
    REQUIRE(dec.simples.size() == 3);
    std::vector<int> dims, mults;
    for (std::size_t i = 0; i < dec.simples.size(); ++i) {
        dims.push_back(dec.simples[i].dim);
        mults.push_back(dec.multiplicities[i]);
    }
    CHECK(dims == std::vector<int>{1, 1, 2});
    CHECK(mults == std::vector<int>{1, 1, 2});
}

TEST_CASE("decompose_module is seed-stable") {
    HopfAlgebra h = kac_bicrossed(s3_pair());
    Decomposition a = decompose_module(h, regular_module(h), 1);
    Decomposition b = decompose_module(h, regular_module(h), 99);
    REQUIRE(a.simples.size() == b.simples.size());
    for (std::size_t i = 0; i < a.simples.size(); ++i) {
        CHECK(a.simples[i].dim == b.simples[i].dim);
        CHECK(a.multiplicities[i] == b.multiplicities[i]);
        auto ca = character(a.simples[i]), cb = character(b.simples[i]);
        for (std::size_t j = 0; j < ca.size(); ++j) CHECK(std::abs(ca[j] - cb[j]) < 1e-6);
    }
}

TEST_CASE("tensor_modules") {
    HopfAlgebra h = group_algebra(symmetric_group(3));
    FusionData fd = fusion_data_of_hopf(h, 0);
    REQUIRE(fd.simples.size() == 3);
    const HModule& v = fd.simples[2]; // the 2-dimensional simple
    REQUIRE(v.dim == 2);
    HModule vv = tensor_modules(h, v, v);
    CHECK(vv.dim == 4);
    CHECK(verify_module(h, vv).ok);
    Decomposition dec = decompose_module(h, vv, 0);
    // V (x) V = 1 + sgn + V
    REQUIRE(dec.simples.size() == 3);
    for (int m : dec.multiplicities) CHECK(m == 1);
    // trivial (x) M keeps hom dimensions to every simple
    HModule tm = tensor_modules(h, trivial_module(h), v);
    for (const auto& s : fd.simples) CHECK(hom_space(h, s, tm) == hom_space(h, s, v));
}

TEST_CASE("fusion_ring_of_hopf") {
    SUBCASE("kG for abelian G is the group ring of characters") {
        rings::BasedRing r = fusion_ring_of_hopf(group_algebra(cyclic_group(4)), 0);
        CHECK(r.size() == 4);
        auto iso = rings::based_ring_isomorphism(r, rings::group_ring(cyclic_group(4)));
        CHECK(iso.status == rings::IsoStatus::found);
    }
    SUBCASE("kS3 gives K(Rep S3)") {
        rings::BasedRing r = fusion_ring_of_hopf(group_algebra(symmetric_group(3)), 0);
        CHECK(r.size() == 3);
        auto iso = rings::based_ring_isomorphism(r, k_rep_s3_oracle());
        CHECK(iso.status == rings::IsoStatus::found);
    }
    SUBCASE("kac(S3 instance) gives a ring isomorphic to K(Rep S3)") {
        rings::BasedRing r = fusion_ring_of_hopf(kac_bicrossed(s3_pair()), 0);
        auto iso = rings::based_ring_isomorphism(r, k_rep_s3_oracle());
        CHECK(iso.status == rings::IsoStatus::found);
    }
    SUBCASE("commutative fusion ring for cocommutative H") {
        rings::BasedRing r = fusion_ring_of_hopf(group_algebra(symmetric_group(3)), 0);
        for (int x = 0; x < r.size(); ++x)
            for (int y = 0; y < r.size(); ++y)
                for (int z = 0; z < r.size(); ++z) CHECK(r.mult(x, y, z) == r.mult(y, x, z));
    }
    SUBCASE("Frobenius reciprocity N_{MN}^P = N_{M*P}^N") {
        rings::BasedRing r = fusion_ring_of_hopf(kac_bicrossed(s3_pair()), 0);
        for (int x = 0; x < r.size(); ++x)
            for (int y = 0; y < r.size(); ++y)
                for (int z = 0; z < r.size(); ++z)
                    CHECK(r.mult(x, y, z) == r.mult(r.dual[x], z, y));
    }
}

TEST_CASE("kernel_simples") {
    CayleyGroup s3 = symmetric_group(3);
    HopfAlgebra h = group_algebra(s3);
    FusionData fd = fusion_data_of_hopf(h, 0);
    SUBCASE("kS3 restricted to kC3: kernel = {1, sgn}") {
        int threecycle = -1;
        for (int x = 0; x < 6; ++x)
            if (s3.element_order(x) == 3) {
                threecycle = x;
                break;
            }
        Subgroup c3 = subgroup_closure(s3, {threecycle});
        auto kernel = kernel_simples(h, basis_columns(6, c3.members), fd);
        REQUIRE(kernel.size() == 2);
        for (int k : kernel) CHECK(fd.simples[k].dim == 1);
    }
    SUBCASE("restriction to span(unit): every simple is in the kernel") {
        QMatrix sub(6, 1);
        for (const auto& [i, c] : h.unit) sub.at(i, 0) = c;
        CHECK(kernel_simples(h, sub, fd).size() == fd.simples.size());
    }
    SUBCASE("kac(S3): kernel against k^Gamma is Rep G; against the dual side it is |Gamma|") {
        matched::MatchedPair mp = s3_pair();
        HopfAlgebra hk = kac_bicrossed(mp);
        KacSequence seq = canonical_kac_sequence(mp, hk);
        FusionData fk = fusion_data_of_hopf(hk, 0);
        auto kernel = kernel_simples(hk, seq.inj, fk);
        // simples restricting trivially to k^Gamma form Rep G: sum of dims^2 = |G| = 2
        int dimsq = 0;
        for (int k : kernel) dimsq += fk.simples[k].dim * fk.simples[k].dim;
        CHECK(dimsq == 2);
        // dual sequence k -> k^G -> H* -> k Gamma -> k: kernel has sum dims^2 = |Gamma| = 3
        HopfAlgebra hd = dual_hopf(hk);
        QMatrix projT(hk.dim, seq.quot.dim);
        for (int i = 0; i < seq.proj.rows; ++i)
            for (int j = 0; j < seq.proj.cols; ++j) projT.at(j, i) = seq.proj.at(i, j);
        FusionData fdual = fusion_data_of_hopf(hd, 0);
        auto dkernel = kernel_simples(hd, projT, fdual);
        int ddimsq = 0;
        for (int k : dkernel) ddimsq += fdual.simples[k].dim * fdual.simples[k].dim;
        CHECK(ddimsq == 3);
    }
}

TEST_CASE("aut_grading") {
    SUBCASE("all-diagonal blocks give the trivial grading") {
        CayleyGroup c4 = cyclic_group(4);
        AutGradingInput in = vector_model_input(c4);
        AutGradingResult res = aut_grading(in, c4);
        CHECK(res.grading.group.order() == 1);
        CHECK(res.neutral_support.size() == 4);
    }
    SUBCASE("vect_{S3}: degree of X_h is conjugation by h; neutral component = Z(S3) block") {
        CayleyGroup s3 = symmetric_group(3);
        AutGradingInput in = vector_model_input(s3);
        AutGradingResult res = aut_grading(in, s3);
        // inner automorphisms of S3 form S3/Z(S3) = S3
        CHECK(res.grading.group.order() == 6);
        for (int h = 0; h < 6; ++h)
            for (int x = 0; x < 6; ++x)
                CHECK(res.automorphisms[h][x] == s3.mul(h, s3.mul(x, s3.inv(h))));
        CHECK(res.neutral_support == std::vector<int>{s3.identity()});
    }
    SUBCASE("non-bijective block support rejected") {
        CayleyGroup c2 = cyclic_group(2);
        AutGradingInput in = vector_model_input(c2);
        in.sigma_blocks[1] = {0, 0};
        CHECK_THROWS_AS(aut_grading(in, c2), ValidationError);
    }
    SUBCASE("non-automorphism degree rejected") {
        CayleyGroup c4 = cyclic_group(4);
        AutGradingInput in = vector_model_input(c4);
        in.ring.reset();
        in.sigma_blocks[1] = {0, 2, 1, 3}; // a bijection that is not an automorphism
        CHECK_THROWS_AS(aut_grading(in, c4), ValidationError);
    }
}

TEST_CASE("A5 factorization instance: tensor dims multiply, 5 x 5 -> 25") {
    CayleyGroup a5 =
        from_permutation_generators(5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}, {1, 0, 3, 2, 4}});
    int fivecycle = -1, r3 = -1, r22 = -1;
    for (int x = 0; x < a5.order(); ++x) {
        if (a5.name(x) == "[1 2 3 4 0]") fivecycle = x;
        if (a5.name(x) == "[1 2 0 3 4]") r3 = x;
        if (a5.name(x) == "[1 0 3 2 4]") r22 = x;
    }
    auto mp = matched::from_exact_factorization(a5, subgroup_closure(a5, {fivecycle}),
                                                subgroup_closure(a5, {r3, r22}));
    HopfAlgebra h = kac_bicrossed(mp);
    FusionData fd = fusion_data_of_hopf(h, 0);
    std::vector<const HModule*> fives;
    for (const auto& s : fd.simples)
        if (s.dim == 5) fives.push_back(&s);
    REQUIRE(fives.size() == 2);
    HModule prod = tensor_modules(h, *fives[0], *fives[1]);
    CHECK(prod.dim == 25);
    CHECK(verify_module(h, prod).ok);
}

TEST_CASE("algebra_generators spans and stays small") {
    for (const auto& h :
         {group_algebra(symmetric_group(3)), kac_bicrossed(s3_pair()),
          dual_group_algebra(cyclic_group(6))}) {
        auto gens = algebra_generators(h);
        CHECK(int(gens.size()) <= h.dim);
        CHECK(gens.size() >= 1);
    }
}
