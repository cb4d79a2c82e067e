#include <doctest.h>

#include "crossext/crossed.hpp"
#include "crossext/repth.hpp"

using namespace crossext;
using namespace crossext::groups;
using namespace crossext::crossed;

namespace {

matched::MatchedPair s3_pair() {
    matched::MatchedPair mp{cyclic_group(2), cyclic_group(3), {}, {}};
    mp.rhd = {{0, 1}, {0, 1}, {0, 1}};
    mp.lhd = {{0, 0}, {1, 2}, {2, 1}};
    return mp;
}

rings::BasedRing k_rep_s3_oracle() {
    return rings::BasedRing::from_sparse(
        {"1", "sgn", "V"}, 0, {0, 1, 2},
        {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 2, 2, 1},
         {2, 0, 2, 1}, {2, 1, 2, 1}, {2, 2, 0, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}});
}

} // namespace

TEST_CASE("verify_crossed_action") {
    SUBCASE("trivial pair with pointed data is valid") {
        auto mp = matched::trivial_pair(cyclic_group(2), cyclic_group(3));
        CHECK(verify_crossed_action(pointed_crossed_from_matched_pair(mp)).ok);
    }
    SUBCASE("S3 instance pointed data is valid") {
        CHECK(verify_crossed_action(pointed_crossed_from_matched_pair(s3_pair())).ok);
    }
    SUBCASE("identity rho against inverting lhd reported at the degree rule") {
        CrossedActionData d = pointed_crossed_from_matched_pair(s3_pair());
        for (auto& row : d.rho)
            for (int i = 0; i < int(row.size()); ++i) row[i] = i;
        auto rep = verify_crossed_action(d);
        CHECK_FALSE(rep.ok);
        bool deg_witness = false;
        for (auto& w : rep.witnesses)
            if (w.check == "rho-degree") deg_witness = true;
        CHECK(deg_witness);
    }
    SUBCASE("pointed data valid iff the pair is valid (exhaustive up to |G|,|Gamma| = 3)") {
        // every action-table pair on (C2,C2), (C2,C3) and (C3,C2)
        auto scan = [](const CayleyGroup& g, const CayleyGroup& gamma) {
            const int ng = g.order(), ns = gamma.order();
            long long total = 1;
            for (int i = 0; i < ns * ng; ++i) total *= ng * ns;
            rings::BasedRing base = rings::group_ring(gamma);
            std::vector<int> deg(ns);
            for (int s = 0; s < ns; ++s) deg[s] = s;
            for (long long code = 0; code < total; ++code) {
                matched::MatchedPair mp{g, gamma, {}, {}};
                mp.rhd.assign(ns, std::vector<int>(ng));
                mp.lhd.assign(ns, std::vector<int>(ng));
                long long c = code;
                for (int s = 0; s < ns; ++s)
                    for (int x = 0; x < ng; ++x) {
                        mp.rhd[s][x] = int(c % ng);
                        c /= ng;
                        mp.lhd[s][x] = int(c % ns);
                        c /= ns;
                    }
                bool valid = matched::verify_matched_pair(mp).ok;
                CrossedActionData d{mp, base, deg, {}};
                d.rho.assign(ng, std::vector<int>(ns));
                for (int x = 0; x < ng; ++x)
                    for (int s = 0; s < ns; ++s) d.rho[x][s] = mp.lhd[s][x];
                REQUIRE(verify_crossed_action(d).ok == valid);
            }
        };
        scan(cyclic_group(2), cyclic_group(2));
        scan(cyclic_group(2), cyclic_group(3));
        scan(cyclic_group(3), cyclic_group(2));
    }
}

TEST_CASE("equivariant objects over the S3 instance") {
    CrossedActionData d = pointed_crossed_from_matched_pair(s3_pair());

    SUBCASE("unit object validates and absorbs under tensor") {
        EquivariantObject one = unit_object(d);
        CHECK(validate_equivariant(d, one).ok);
        EquivariantObject reg = regular_object(d);
        CHECK(validate_equivariant(d, reg).ok);
        EquivariantObject prod = tensor_equivariant(d, one, reg);
        CHECK(prod.total_dim() == reg.total_dim());
        CHECK(hom_equivariant(d, prod, reg) == hom_equivariant(d, reg, reg));
    }
    SUBCASE("two 1-dim objects at degrees s,t tensor to degree st") {
        // 1-dim object at a fixed point of <| carrying a character of the stabilizer
        EquivariantObject xs;
        xs.dims = {1, 0, 0};
        xs.r.assign(2, linalg::CMatrix::identity(1));
        xs.r[1](0, 0) = -1.0; // sign character of the stabilizer C2 at degree e
        CHECK(validate_equivariant(d, xs).ok);
        EquivariantObject prod = tensor_equivariant(d, xs, xs);
        CHECK(prod.dims == std::vector<int>{1, 0, 0});
        CHECK(std::abs(prod.r[1](0, 0) - linalg::cplx(1.0)) < 1e-12);
    }
    SUBCASE("hom dimensions: Schur for simples, disjoint orbits give zero") {
        EquivariantObject one = unit_object(d);
        CHECK(hom_equivariant(d, one, one) == 1);
        // the induced object on the 2-element orbit is simple of dim 2
        EquivariantObject big = induced_object(d, {1, 2});
        CHECK(validate_equivariant(d, big).ok);
        CHECK(hom_equivariant(d, big, big) == 1);
        CHECK(hom_equivariant(d, one, big) == 0);
    }
    SUBCASE("regular object decomposes as 3 simples: two 1-dim at e, one 2-dim") {
        EquivariantObject reg = regular_object(d);
        EqDecomposition dec = decompose_equivariant(d, reg, 0);
        REQUIRE(dec.simples.size() == 3);
        std::vector<int> dims;
        for (auto& s : dec.simples) dims.push_back(s.total_dim());
        CHECK(dims == std::vector<int>{1, 1, 2});
        CHECK(dec.multiplicities == std::vector<int>{1, 1, 1});
        // oracle: orbits {e} and {c, c^2} with stabilizer class counts 2 and 1
        std::vector<std::vector<int>> action(3, std::vector<int>(2));
        for (int s = 0; s < 3; ++s)
            for (int g = 0; g < 2; ++g) action[s][g] = d.mp.lhd[s][g];
        auto orbits = orbits_and_stabilizers(d.mp.G, action);
        int expected = 0;
        for (auto& o : orbits) expected += o.stabilizer_class_count;
        CHECK(int(dec.simples.size()) == expected);
    }
    SUBCASE("trivial pair (G, {e}): simples of the regular object = class count of G") {
        auto mp = matched::trivial_pair(symmetric_group(3), cyclic_group(1));
        CrossedActionData dt = pointed_crossed_from_matched_pair(mp);
        EqDecomposition dec = decompose_equivariant(dt, regular_object(dt), 0);
        CHECK(int(dec.simples.size()) == conjugacy_class_count(mp.G));
    }
}

TEST_CASE("tensor_equivariant associativity via structure constants") {
    CrossedActionData d = pointed_crossed_from_matched_pair(s3_pair());
    EqDecomposition dec = decompose_equivariant(d, regular_object(d), 0);
    REQUIRE(dec.simples.size() == 3);
    const auto& a = dec.simples[1];
    const auto& b = dec.simples[2];
    const auto& c = dec.simples[2];
    EquivariantObject left = tensor_equivariant(d, tensor_equivariant(d, a, b), c);
    EquivariantObject right = tensor_equivariant(d, a, tensor_equivariant(d, b, c));
    CHECK(left.dims == right.dims);
    for (const auto& s : dec.simples)
        CHECK(hom_equivariant(d, s, left) == hom_equivariant(d, s, right));
}

TEST_CASE("equivariantization_ring") {
    SUBCASE("(G, {e}) with G = C2 gives Z[C2]") {
        auto mp = matched::trivial_pair(cyclic_group(2), cyclic_group(1));
        rings::BasedRing r = equivariantization_ring(pointed_crossed_from_matched_pair(mp), 0);
        CHECK(r.size() == 2);
        auto iso = rings::based_ring_isomorphism(r, rings::group_ring(cyclic_group(2)));
        CHECK(iso.status == rings::IsoStatus::found);
    }
    SUBCASE("({e}, Gamma) gives Z[Gamma]") {
        auto mp = matched::trivial_pair(cyclic_group(1), cyclic_group(4));
        rings::BasedRing r = equivariantization_ring(pointed_crossed_from_matched_pair(mp), 0);
        auto iso = rings::based_ring_isomorphism(r, rings::group_ring(cyclic_group(4)));
        CHECK(iso.status == rings::IsoStatus::found);
    }
    SUBCASE("S3 instance gives a ring isomorphic to K(Rep S3)") {
        rings::BasedRing r = equivariantization_ring(pointed_crossed_from_matched_pair(s3_pair()), 0);
        REQUIRE(r.size() == 3);
        auto iso = rings::based_ring_isomorphism(r, k_rep_s3_oracle());
        CHECK(iso.status == rings::IsoStatus::found);
        // sum of squared FP dims = |G||Gamma| within 1e-6
        auto dims = rings::fp_dimensions(r);
        double total = 0;
        for (double x : dims) total += x * x;
        CHECK(std::abs(total - 6.0) < 1e-6);
    }
}

TEST_CASE("dual_graded_ring") {
    SUBCASE("pointed S3 instance gives Z[S3] with a faithful bicrossed grading") {
        CrossedActionData d = pointed_crossed_from_matched_pair(s3_pair());
        auto [ring, grading] = dual_graded_ring(d);
        CHECK(ring.size() == 6);
        CHECK(rings::verify_based_ring(ring).ok);
        CHECK(rings::check_grading(ring, grading));
        // faithful: every group element carries a basis element
        std::vector<char> hit(grading.group.order(), 0);
        for (int v : grading.deg) hit[v] = 1;
        for (char h : hit) CHECK(h == 1);
        // isomorphic to the group ring of the bicrossed group
        auto bg = matched::bicrossed_group(d.mp);
        auto iso = rings::based_ring_isomorphism(ring, rings::group_ring(bg.group));
        CHECK(iso.status == rings::IsoStatus::found);
        // nilpotency class <= 1
        auto cs = rings::upper_central_series(ring);
        CHECK(cs.nilpotent);
        CHECK(*cs.nilpotency_class <= 1);
    }
    SUBCASE("trivial pair with base K(Rep S3): convolution ring with neutral component K(Rep S3)") {
        auto mp = matched::trivial_pair(cyclic_group(2), cyclic_group(1));
        CrossedActionData d{mp, k_rep_s3_oracle(), {0, 0, 0}, {}};
        d.rho.assign(2, {0, 1, 2});
        REQUIRE(verify_crossed_action(d).ok);
        auto [ring, grading] = dual_graded_ring(d);
        CHECK(ring.size() == 6);
        CHECK(rings::check_grading(ring, grading));
        // neutral component (degree (e,e)) is the sub-basis {(e, x)} and its
        // induced subring is the base ring
        std::vector<int> neutral;
        for (int i = 0; i < ring.size(); ++i)
            if (grading.deg[i] == grading.group.identity()) neutral.push_back(i);
        CHECK(neutral == std::vector<int>{0, 1, 2});
        for (int x : neutral)
            for (int y : neutral)
                for (int z : neutral)
                    CHECK(ring.mult(x, y, z) == d.base.mult(x, y, z));
    }
}
