// Python bindings: algebra factories, codimension computations, identity
// subset checks, witness certificates, growth/envelope reports, schedules.
// GMP values cross the boundary as Python ints (via decimal strings);
// rationals as canonical "p/q" strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "starcodim/algebra.hpp"
#include "starcodim/analysis.hpp"
#include "starcodim/codim.hpp"
#include "starcodim/families.hpp"
#include "starcodim/io.hpp"
#include "starcodim/monomials.hpp"
#include "starcodim/rank.hpp"
#include "starcodim/rational.hpp"

namespace py = pybind11;
using namespace starcodim;

namespace {

py::int_ pyint(const Integer& z) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

Integer to_integer(const py::int_& v) {
    return Integer(std::string(py::str(static_cast<const py::object&>(v))), 10);
}

ComputeOptions make_options(const std::string& basis_mode, const std::string& rank,
                            int degree_cap, int jobs) {
    ComputeOptions opts;
    if (basis_mode == "full") {
        opts.basis_mode = BasisMode::Full;
    } else if (basis_mode == "left-normed") {
        opts.basis_mode = BasisMode::LeftNormed;
    } else {
        throw std::invalid_argument("basis_mode must be 'full' or 'left-normed'");
    }
    if (rank == "exact") {
        opts.rank_method = RankMethod::Exact;
    } else if (rank == "modular") {
        opts.rank_method = RankMethod::ModularChecked;
    } else {
        throw std::invalid_argument("rank must be 'exact' or 'modular'");
    }
    if (degree_cap > 0) opts.degree_cap = degree_cap;
    if (jobs > 0) opts.jobs = jobs;
    return opts;
}

using AlgebraHandle = std::shared_ptr<AlgebraWithInvolution>;

AlgebraPtr as_ptr(const AlgebraHandle& a) { return a; }

py::dict witness_dict(const WitnessCertificate& cert) {
    py::dict d;
    d["algebra"] = cert.algebra_name;
    d["k"] = cert.k;
    d["m"] = cert.m;
    d["rank"] = cert.rank;
    d["monomials"] = static_cast<int>(cert.monomials.size());
    d["assignments"] = static_cast<int>(cert.assignments.size());
    return d;
}

py::list report_rows(const BoundReport& rep) {
    py::list rows;
    for (const auto& r : rep.rows) {
        py::dict d;
        d["bound"] = r.bound;
        d["n"] = r.n;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["pass"] = r.pass;
        d["margin"] = r.margin;
        rows.append(std::move(d));
    }
    return rows;
}

py::dict schedule_dict(const GreedyResult& result) {
    py::dict d;
    py::list blocks;
    for (const auto& [t, n] : result.schedule.blocks) {
        blocks.append(py::make_tuple(pyint(t), pyint(n)));
    }
    d["blocks"] = std::move(blocks);
    py::list steps;
    for (const auto& s : result.steps) {
        py::dict sd;
        sd["index"] = s.index;
        sd["T"] = pyint(s.T);
        sd["N"] = pyint(s.N);
        sd["m"] = pyint(s.chain_m);
        sd["crossing"] = pyint(s.crossing);
        sd["rule"] = s.rule;
        steps.append(std::move(sd));
    }
    d["steps"] = std::move(steps);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Exact *-codimension engine for finite-dimensional algebras "
                "with involution.";

    py::class_<AlgebraWithInvolution, AlgebraHandle>(mod, "Algebra")
        .def_property_readonly("name", &AlgebraWithInvolution::name)
        .def_property_readonly("dim", &AlgebraWithInvolution::dim)
        .def_property_readonly("labels",
                               [](const AlgebraWithInvolution& a) { return a.labels(); })
        .def("validate",
             [](const AlgebraWithInvolution& a) {
                 std::vector<std::string> issues;
                 for (const auto& issue : validate(a)) issues.push_back(issue.message);
                 return issues;
             })
        .def("__repr__", [](const AlgebraWithInvolution& a) {
            return "<Algebra " + a.name() + " dim=" + std::to_string(a.dim()) + ">";
        });

    py::class_<CodimSequence>(mod, "CodimSequence")
        .def_property_readonly("algebra_name",
                               [](const CodimSequence& s) { return s.algebra_name; })
        .def("totals",
             [](const CodimSequence& s) {
                 py::list out;
                 for (const auto& tc : s.by_degree)
                     out.append(py::make_tuple(tc.n, pyint(tc.total)));
                 return out;
             })
        .def("cells", [](const CodimSequence& s, int n) {
            py::list out;
            for (const auto& tc : s.by_degree) {
                if (tc.n != n) continue;
                for (const auto& cell : tc.cells)
                    out.append(py::make_tuple(cell.k, cell.m, cell.value, cell.method));
            }
            return out;
        });

    py::class_<BoundReport>(mod, "BoundReport")
        .def_property_readonly("name", [](const BoundReport& r) { return r.name; })
        .def("all_pass", &BoundReport::all_pass)
        .def("rows", &report_rows)
        .def("to_csv", [](const BoundReport& r) { return to_csv(r); })
        .def("to_table", [](const BoundReport& r) { return to_table(r); });

    mod.def("a_t",
            [](int T) { return std::make_shared<AlgebraWithInvolution>(*make_A_T(T)); },
            py::arg("T"));
    mod.def("tilde_slice",
            [](int T, int M) {
                return std::make_shared<AlgebraWithInvolution>(*make_tilde_slice(T, M));
            },
            py::arg("T"), py::arg("M"));
    mod.def("b_slice",
            [](int T, int N, int M) {
                return std::make_shared<AlgebraWithInvolution>(*make_B_slice(T, N, M));
            },
            py::arg("T"), py::arg("N"), py::arg("M"));
    mod.def("c_prefix",
            [](const std::vector<std::pair<py::int_, py::int_>>& blocks,
               const std::vector<int>& slice_sizes) {
                BlockSchedule sched;
                for (const auto& [t, n] : blocks)
                    sched.blocks.emplace_back(to_integer(t), to_integer(n));
                return std::make_shared<AlgebraWithInvolution>(
                    *make_C_prefix(sched, slice_sizes));
            },
            py::arg("blocks"), py::arg("slice_sizes"));

    mod.def("parse_algebra",
            [](const std::string& text, const std::string& source) {
                std::istringstream in(text);
                return std::make_shared<AlgebraWithInvolution>(*load_algebra(in, source));
            },
            py::arg("text"), py::arg("source") = "<python>");
    mod.def("load_algebra_file", [](const std::string& path) {
        return std::make_shared<AlgebraWithInvolution>(*load_algebra_file(path));
    });
    mod.def("algebra_to_string",
            [](const AlgebraHandle& a) { return algebra_to_string(*a); });

    mod.def("partial_codim",
            [](const AlgebraHandle& a, int k, int m, const std::string& basis_mode,
               const std::string& rank, int degree_cap, int jobs) {
                return partial_codimension(*a, k, m,
                                           make_options(basis_mode, rank, degree_cap, jobs));
            },
            py::arg("algebra"), py::arg("k"), py::arg("m"),
            py::arg("basis_mode") = "full", py::arg("rank") = "exact",
            py::arg("degree_cap") = 0, py::arg("jobs") = 1);
    mod.def("total_codim",
            [](const AlgebraHandle& a, int n, const std::string& basis_mode,
               const std::string& rank, int degree_cap, int jobs) {
                return pyint(total_codimension(
                    *a, n, make_options(basis_mode, rank, degree_cap, jobs)));
            },
            py::arg("algebra"), py::arg("n"), py::arg("basis_mode") = "full",
            py::arg("rank") = "exact", py::arg("degree_cap") = 0, py::arg("jobs") = 1);
    mod.def("sequence",
            [](const AlgebraHandle& a, int n_max, const std::string& basis_mode,
               const std::string& rank, int degree_cap, int jobs) {
                EvalContext ctx(as_ptr(a));
                return codim_sequence(ctx, n_max,
                                      make_options(basis_mode, rank, degree_cap, jobs));
            },
            py::arg("algebra"), py::arg("n_max"), py::arg("basis_mode") = "full",
            py::arg("rank") = "exact", py::arg("degree_cap") = 0, py::arg("jobs") = 1);

    mod.def("subset_check",
            [](const AlgebraHandle& a, const AlgebraHandle& b, int k, int m,
               const std::string& basis_mode, const std::string& rank, int degree_cap,
               int jobs) {
                EvalContext ca(as_ptr(a)), cb(as_ptr(b));
                auto check = identity_subset_check(
                    ca, cb, k, m, make_options(basis_mode, rank, degree_cap, jobs));
                py::dict d;
                d["contained"] = check.contained;
                d["has_counterexample"] = check.counterexample.has_value();
                return d;
            },
            py::arg("sub"), py::arg("super"), py::arg("k"), py::arg("m"),
            py::arg("basis_mode") = "full", py::arg("rank") = "exact",
            py::arg("degree_cap") = 0, py::arg("jobs") = 1);

    mod.def("chain_witness",
            [](int T, int chains, int tail) {
                return witness_dict(chain_witness(T, chains, tail));
            },
            py::arg("T"), py::arg("chains"), py::arg("tail") = 0);
    mod.def("factorial_witness",
            [](int T, int M, int m, int tail) {
                return witness_dict(factorial_witness(T, M, m, tail));
            },
            py::arg("T"), py::arg("M"), py::arg("m"), py::arg("tail") = 0);

    mod.def("exponent_constants", [](int T) {
        auto c = exponent_constants(T);
        py::dict d;
        d["T"] = c.T;
        d["theta"] = to_string(c.theta);
        d["beta_lo"] = c.beta_lo;
        d["beta_hi"] = c.beta_hi;
        return d;
    });
    mod.def("beta_bounds", [](int T) {
        auto [lo, hi] = beta_bounds(T);
        return py::make_tuple(to_string(lo), to_string(hi));
    });

    mod.def("dimension_envelope",
            [](int d, const CodimSequence& seq) { return check_dimension_envelope(d, seq); },
            py::arg("dim"), py::arg("seq"));
    mod.def("cubic_envelope",
            [](const CodimSequence& seq, int T) { return check_cubic_envelope(seq, T); },
            py::arg("seq"), py::arg("T"));
    mod.def("sandwich",
            [](const CodimSequence& seq, int T) { return check_sandwich(seq, T); },
            py::arg("seq"), py::arg("T"));
    mod.def("support",
            [](const CodimSequence& seq, int T) { return check_support(seq, T); },
            py::arg("seq"), py::arg("T"));
    mod.def("cell_cap",
            [](const CodimSequence& seq, int T) { return check_cell_cap(seq, T); },
            py::arg("seq"), py::arg("T"));
    mod.def("stepwise_growth",
            [](const CodimSequence& seq) { return check_stepwise_growth(seq); },
            py::arg("seq"));
    mod.def("stirling_check",
            [](int T, int k_max) { return stirling_binomial_check(T, k_max); },
            py::arg("T"), py::arg("k_max"));

    mod.def("window_estimate",
            [](const CodimSequence& seq, int lo, int hi) {
                auto est = window_estimate(seq, lo, hi);
                py::dict d;
                d["lo"] = est.lo;
                d["hi"] = est.hi;
                py::list roots;
                for (const auto& [n, root] : est.roots)
                    roots.append(py::make_tuple(n, root));
                d["roots"] = std::move(roots);
                d["min_root"] = est.min_root;
                d["max_root"] = est.max_root;
                return d;
            },
            py::arg("seq"), py::arg("lo"), py::arg("hi"));

    mod.def("greedy_schedule",
            [](const std::string& alpha, const std::string& mode, int blocks, int horizon,
               int first_T) {
                GreedyOptions opts;
                if (mode == "computed") {
                    opts.mode = ScheduleMode::Computed;
                } else if (mode == "bound") {
                    opts.mode = ScheduleMode::Bound;
                } else {
                    throw std::invalid_argument("mode must be 'computed' or 'bound'");
                }
                opts.blocks = blocks;
                opts.horizon = horizon;
                opts.first_T = first_T;
                return schedule_dict(greedy_schedule(parse_rational(alpha), opts));
            },
            py::arg("alpha"), py::arg("mode") = "computed", py::arg("blocks") = 2,
            py::arg("horizon") = 6, py::arg("first_T") = 2);

    mod.def("compare_factorial_power",
            [](const py::int_& m, const std::string& alpha, const py::int_& n) {
                return certified_factorial_vs_power(to_integer(m), parse_rational(alpha),
                                                    to_integer(n));
            },
            py::arg("m"), py::arg("alpha"), py::arg("n"));

    py::register_exception<IncompleteError>(mod, "IncompleteError");
}
