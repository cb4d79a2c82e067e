#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossext/crossed.hpp"
#include "crossext/hopf.hpp"
#include "crossext/repth.hpp"

namespace py = pybind11;
using namespace crossext;

namespace {

hopf::Q to_rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return hopf::Q(h.cast<long>());
    if (py::isinstance<py::str>(h)) {
        hopf::Q q(h.cast<std::string>());
        q.canonicalize();
        return q;
    }
    throw ValidationError("rational entries must be ints or 'p/q' strings");
}

hopf::QMatrix to_qmatrix(const std::vector<std::vector<py::object>>& cols, int dim) {
    hopf::QMatrix m(dim, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j) {
        if (int(cols[j].size()) != dim) throw ValidationError("chain vector has wrong length");
        for (int i = 0; i < dim; ++i) m.at(i, j) = to_rational(cols[j][i]);
    }
    return m;
}

py::dict report_to_dict(const ValidationReport& rep) {
    py::dict d;
    d["ok"] = rep.ok;
    py::list ws;
    for (const auto& w : rep.witnesses) {
        py::dict item;
        item["check"] = w.check;
        item["detail"] = w.detail;
        ws.append(item);
    }
    d["witnesses"] = ws;
    return d;
}

std::vector<std::array<int, 4>> ring_entries(const rings::BasedRing& r) {
    std::vector<std::array<int, 4>> out;
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y)
            for (auto [z, m] : r.product(x, y)) out.push_back({x, y, z, m});
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "matched pairs of groups, bicrossed products, Kac-type Hopf algebras,\n"
              "crossed actions, equivariantizations and graded fusion rings";

    py::register_exception<Error>(m, "CrossextError");

    // ------------------------------------------------------------- groups
    py::class_<groups::CayleyGroup>(m, "CayleyGroup")
        .def_property_readonly("order", &groups::CayleyGroup::order)
        .def_property_readonly("identity", &groups::CayleyGroup::identity)
        .def("mul", &groups::CayleyGroup::mul)
        .def("inv", &groups::CayleyGroup::inv)
        .def("is_abelian", &groups::CayleyGroup::is_abelian)
        .def("element_order", &groups::CayleyGroup::element_order)
        .def_property_readonly("element_names", &groups::CayleyGroup::element_names)
        .def("__repr__", [](const groups::CayleyGroup& g) {
            return "<CayleyGroup order=" + std::to_string(g.order()) + ">";
        });

    m.def("group_from_generators", &groups::from_permutation_generators, py::arg("degree"),
          py::arg("generators"), py::arg("order_bound") = groups::kDefaultOrderBound);
    m.def("cyclic_group", &groups::cyclic_group);
    m.def("symmetric_group", &groups::symmetric_group, py::arg("n"),
          py::arg("order_bound") = groups::kDefaultOrderBound);
    m.def("direct_product", &groups::direct_product);
    m.def("subgroup_closure", [](const groups::CayleyGroup& g, const std::vector<int>& seeds) {
        return groups::subgroup_closure(g, seeds).members;
    });
    m.def("center", [](const groups::CayleyGroup& g) { return groups::center(g).members; });
    m.def("conjugacy_class_count", &groups::conjugacy_class_count);
    m.def("is_exact_factorization",
          [](const groups::CayleyGroup& l, const std::vector<int>& g, const std::vector<int>& gm) {
              return groups::is_exact_factorization(l, groups::Subgroup{g}, groups::Subgroup{gm});
          });
    m.def("all_subgroups", [](const groups::CayleyGroup& g) {
        std::vector<std::vector<int>> out;
        for (const auto& s : groups::all_subgroups(g)) out.push_back(s.members);
        return out;
    });
    m.def("orbits_and_stabilizers",
          [](const groups::CayleyGroup& g, const std::vector<std::vector<int>>& action) {
              py::list out;
              for (const auto& o : groups::orbits_and_stabilizers(g, action)) {
                  py::dict d;
                  d["orbit"] = o.orbit;
                  d["stabilizer_order"] = o.stabilizer_order;
                  d["stabilizer_class_count"] = o.stabilizer_class_count;
                  out.append(d);
              }
              return out;
          });

    // ------------------------------------------------------------ matched
    py::class_<matched::MatchedPair>(m, "MatchedPair")
        .def(py::init([](const groups::CayleyGroup& g, const groups::CayleyGroup& gamma,
                         std::vector<std::vector<int>> rhd, std::vector<std::vector<int>> lhd) {
                 matched::MatchedPair mp{g, gamma, std::move(rhd), std::move(lhd)};
                 mp.check_shape();
                 return mp;
             }),
             py::arg("G"), py::arg("Gamma"), py::arg("rhd"), py::arg("lhd"))
        .def_readonly("G", &matched::MatchedPair::G)
        .def_readonly("Gamma", &matched::MatchedPair::Gamma)
        .def_readonly("rhd", &matched::MatchedPair::rhd)
        .def_readonly("lhd", &matched::MatchedPair::lhd);

    m.def("trivial_pair", &matched::trivial_pair);
    m.def("verify_matched_pair",
          [](const matched::MatchedPair& mp) { return report_to_dict(matched::verify_matched_pair(mp)); });
    m.def("from_exact_factorization",
          [](const groups::CayleyGroup& l, const std::vector<int>& g, const std::vector<int>& gm) {
              return matched::from_exact_factorization(l, groups::Subgroup{g}, groups::Subgroup{gm});
          });
    m.def("bicrossed_group",
          [](const matched::MatchedPair& mp) { return matched::bicrossed_group(mp).group; });
    m.def("enumerate_exact_factorizations",
          [](const groups::CayleyGroup& l, int bound) {
              py::list out;
              for (const auto& f : matched::enumerate_exact_factorizations(l, bound)) {
                  py::dict d;
                  d["G_members"] = f.g_sub.members;
                  d["Gamma_members"] = f.gamma_sub.members;
                  d["pair"] = f.pair;
                  out.append(d);
              }
              return out;
          },
          py::arg("L"), py::arg("order_bound") = 120);

    // -------------------------------------------------------------- rings
    py::class_<rings::BasedRing>(m, "BasedRing")
        .def(py::init([](std::vector<std::string> labels, int unit, std::vector<int> dual,
                         const std::vector<std::array<int, 4>>& entries) {
                 return rings::BasedRing::from_sparse(std::move(labels), unit, std::move(dual),
                                                      entries);
             }),
             py::arg("labels"), py::arg("unit"), py::arg("dual"), py::arg("N"))
        .def_readonly("labels", &rings::BasedRing::labels)
        .def_readonly("unit", &rings::BasedRing::unit)
        .def_readonly("dual", &rings::BasedRing::dual)
        .def_property_readonly("size", &rings::BasedRing::size)
        .def("mult", &rings::BasedRing::mult)
        .def("entries", &ring_entries)
        .def("__repr__", [](const rings::BasedRing& r) {
            return "<BasedRing rank=" + std::to_string(r.size()) + ">";
        });

    m.def("verify_based_ring",
          [](const rings::BasedRing& r) { return report_to_dict(rings::verify_based_ring(r)); });
    m.def("fp_dimensions",
          [](const rings::BasedRing& r) { return rings::fp_dimensions(r); });
    m.def("group_ring", &rings::group_ring);
    m.def("universal_grading", [](const rings::BasedRing& r) {
        rings::GradingMap g = rings::universal_grading(r);
        py::dict d;
        d["group"] = g.group;
        d["deg"] = g.deg;
        return d;
    });
    m.def("upper_central_series", [](const rings::BasedRing& r) {
        rings::CentralSeries cs = rings::upper_central_series(r);
        py::dict d;
        d["nilpotent"] = cs.nilpotent;
        d["nilpotency_class"] =
            cs.nilpotency_class ? py::object(py::int_(*cs.nilpotency_class)) : py::none();
        d["chain"] = cs.chain;
        return d;
    });
    m.def("based_ring_isomorphism",
          [](const rings::BasedRing& r, const rings::BasedRing& s, int timeout_ms) -> py::object {
              rings::IsoResult res = rings::based_ring_isomorphism(r, s, timeout_ms);
              if (res.status == rings::IsoStatus::found) return py::cast(res.bijection);
              return py::none();
          },
          py::arg("r"), py::arg("s"), py::arg("timeout_ms") = 10000);

    // --------------------------------------------------------------- hopf
    py::class_<hopf::HopfAlgebra>(m, "HopfAlgebra")
        .def_readonly("dim", &hopf::HopfAlgebra::dim)
        .def_readonly("basis_names", &hopf::HopfAlgebra::basis_names)
        .def("__repr__", [](const hopf::HopfAlgebra& h) {
            return "<HopfAlgebra dim=" + std::to_string(h.dim) + ">";
        });

    m.def("group_algebra", &hopf::group_algebra);
    m.def("dual_group_algebra", &hopf::dual_group_algebra);
    m.def("dual_hopf", &hopf::dual_hopf);
    m.def("kac_bicrossed", &hopf::kac_bicrossed);
    m.def("verify_hopf_axioms", [](const hopf::HopfAlgebra& h) {
        return report_to_dict(hopf::verify_hopf_axioms(h));
    });
    m.def("is_commutative", &hopf::is_commutative);
    m.def("is_cocommutative", &hopf::is_cocommutative);
    m.def("symmetric_central_algebra_test", &hopf::symmetric_central_algebra_test);
    m.def("kac_exact_sequence_check", [](const matched::MatchedPair& mp) {
        hopf::HopfAlgebra h = hopf::kac_bicrossed(mp);
        hopf::KacSequence seq = hopf::canonical_kac_sequence(mp, h);
        return report_to_dict(hopf::exact_sequence_check(h, seq.sub, seq.inj, seq.quot, seq.proj));
    });
    m.def("verify_subnormal_series",
          [](const hopf::HopfAlgebra& h, const std::vector<std::vector<std::vector<py::object>>>& chain,
             bool dual) {
              std::vector<hopf::QMatrix> qchain;
              int dim = h.dim;
              for (const auto& step : chain) qchain.push_back(to_qmatrix(step, dim));
              hopf::SeriesCertificate cert = dual ? hopf::upper_series_via_dual(h, qchain)
                                                  : hopf::verify_subnormal_series(h, qchain);
              py::dict d;
              d["certified"] = cert.ok;
              py::list factors;
              for (auto f : cert.factors) factors.append(hopf::factor_type_name(f));
              d["factors"] = factors;
              d["failure"] = cert.failure;
              return d;
          },
          py::arg("h"), py::arg("chain"), py::arg("dual") = false);
    m.def("kac_canonical_chain", [](const matched::MatchedPair& mp) {
        // k^Gamma basis columns then the unit line, as dense string vectors
        hopf::HopfAlgebra h = hopf::kac_bicrossed(mp);
        hopf::KacSequence seq = hopf::canonical_kac_sequence(mp, h);
        auto densify = [&](const hopf::QMatrix& m2) {
            std::vector<std::vector<std::string>> cols;
            for (int j = 0; j < m2.cols; ++j) {
                std::vector<std::string> col;
                for (int i = 0; i < m2.rows; ++i) col.push_back(m2.at(i, j).get_str());
                cols.push_back(col);
            }
            return cols;
        };
        hopf::QMatrix unit_line(h.dim, 1);
        for (const auto& [i, c] : h.unit) unit_line.at(i, 0) = c;
        py::list out;
        out.append(densify(seq.inj));
        out.append(densify(unit_line));
        return out;
    });

    // -------------------------------------------------------------- repth
    m.def("fusion_ring_of_hopf",
          [](const hopf::HopfAlgebra& h, std::uint64_t seed) {
              return repth::fusion_ring_of_hopf(h, seed);
          },
          py::arg("h"), py::arg("seed") = 0);
    m.def("simple_module_dims",
          [](const hopf::HopfAlgebra& h, std::uint64_t seed) {
              repth::FusionData fd = repth::fusion_data_of_hopf(h, seed);
              std::vector<int> dims;
              for (const auto& s : fd.simples) dims.push_back(s.dim);
              return dims;
          },
          py::arg("h"), py::arg("seed") = 0);
    m.def("vector_model_aut_grading", [](const groups::CayleyGroup& g) {
        repth::AutGradingResult res = repth::aut_grading(repth::vector_model_input(g), g);
        py::dict d;
        d["aut_image_order"] = res.grading.group.order();
        d["deg"] = res.grading.deg;
        d["automorphisms"] = res.automorphisms;
        d["neutral_support"] = res.neutral_support;
        return d;
    });

    // ------------------------------------------------------------ crossed
    py::class_<crossed::CrossedActionData>(m, "CrossedActionData")
        .def_readonly("mp", &crossed::CrossedActionData::mp)
        .def_readonly("base", &crossed::CrossedActionData::base)
        .def_readonly("deg", &crossed::CrossedActionData::deg)
        .def_readonly("rho", &crossed::CrossedActionData::rho);

    m.def("pointed_crossed_from_matched_pair", &crossed::pointed_crossed_from_matched_pair);
    m.def("verify_crossed_action", [](const crossed::CrossedActionData& d) {
        return report_to_dict(crossed::verify_crossed_action(d));
    });
    m.def("equivariantization_ring",
          [](const crossed::CrossedActionData& d, std::uint64_t seed) {
              return crossed::equivariantization_ring(d, seed);
          },
          py::arg("d"), py::arg("seed") = 0);
    m.def("dual_graded_ring", [](const crossed::CrossedActionData& d) {
        auto [ring, grading] = crossed::dual_graded_ring(d);
        py::dict out;
        out["ring"] = ring;
        out["group"] = grading.group;
        out["deg"] = grading.deg;
        return out;
    });

    m.attr("__version__") = "0.1.0";
}
