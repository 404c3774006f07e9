#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "satotate/arith.hpp"
#include "satotate/ec.hpp"
#include "satotate/errors.hpp"
#include "satotate/harness.hpp"
#include "satotate/io.hpp"
#include "satotate/parallel.hpp"
#include "satotate/stats.hpp"
#include "satotate/synthetic.hpp"
#include "satotate/tau.hpp"

namespace py = pybind11;
using namespace satotate;

namespace {

py::list taus_to_python(const ExactTauTable& t) {
    py::list out;
    py::object to_int = py::module_::import("builtins").attr("int");
    for (const auto& v : t.taus) out.append(to_int(v.get_str()));
    return out;
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

Checkpoints make_checkpoints(const std::vector<std::uint64_t>& cps, std::uint64_t limit) {
    return cps.empty() ? Checkpoints::decades(limit) : Checkpoints(cps, limit);
}

SupportMode parse_support(const std::string& s) {
    if (s == "all") return SupportMode::All;
    if (s == "nonzero") return SupportMode::Nonzero;
    if (s == "floor") return SupportMode::FloorA;
    throw InputError("support must be all, nonzero or floor");
}

Standardization parse_standardization(const std::string& s) {
    if (s == "asymptotic") return Standardization::Asymptotic;
    if (s == "finite") return Standardization::FiniteSize;
    if (s == "self") return Standardization::Self;
    throw InputError("standardization must be asymptotic, finite or self");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the satotate toolkit";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<DataCorruptionError>(m, "DataCorruptionError", PyExc_RuntimeError);

    m.def("set_thread_count", &set_thread_count, py::arg("threads"));

    py::class_<NormalizedSequence>(m, "Sequence")
        .def_readonly("limit", &NormalizedSequence::limit)
        .def_property_readonly("source", [](const NormalizedSequence& s) { return to_string(s.source); })
        .def_property_readonly("values", [](const NormalizedSequence& s) { return to_numpy(s.values); })
        .def("__len__", [](const NormalizedSequence& s) { return s.limit; })
        .def("__getitem__", [](const NormalizedSequence& s, std::uint64_t n) {
            if (n < 1 || n > s.limit) throw py::index_error("index outside [1, limit]");
            return s.values[n];
        });

    m.def("tau", [](std::uint64_t limit) { return taus_to_python(expand_delta(TauConfig{limit})); },
          py::arg("limit"), "Exact tau(n) for 0 <= n <= limit (entry 0 is 0).");
    m.def("tau_naive", [](std::uint64_t limit) { return taus_to_python(tau_naive_oracle(limit)); },
          py::arg("limit"));
    m.def("tau_sequence", [](std::uint64_t limit) { return normalize_tau(expand_delta(TauConfig{limit})); },
          py::arg("limit"), "Normalized tau(n) / n^{11/2}.");
    m.def("tau_integrity", [](std::uint64_t limit) {
        return report_to_json(integrity_check(expand_delta(TauConfig{limit})));
    }, py::arg("limit"));

    m.def("trace_at_prime", [](std::int64_t a4, std::int64_t a6, std::uint64_t p) {
        return trace_at_prime(CurveSpec(a4, a6), p);
    }, py::arg("a4"), py::arg("a6"), py::arg("p"));
    m.def("traces", [](std::int64_t a4, std::int64_t a6, std::uint64_t limit) {
        std::vector<std::tuple<std::uint64_t, std::int64_t, bool>> out;
        for (const auto& r : trace_series(CurveSpec(a4, a6), limit).records) out.emplace_back(r.p, r.t, r.good);
        return out;
    }, py::arg("a4"), py::arg("a6"), py::arg("limit"), "(p, t_p, good) for primes p <= limit.");
    m.def("ec_sequence", [](std::int64_t a4, std::int64_t a6, std::uint64_t limit) {
        const auto series = trace_series(CurveSpec(a4, a6), limit);
        return ec_normalized_sequence(series, build_spf_sieve(limit), limit);
    }, py::arg("a4"), py::arg("a6"), py::arg("limit"));
    m.def("kappa_partial", [](std::int64_t a4, std::int64_t a6, std::uint64_t x) {
        return kappa_partial(trace_series(CurveSpec(a4, a6), x), x).value;
    }, py::arg("a4"), py::arg("a6"), py::arg("x"));

    m.def("sample_st_angle", [](std::uint64_t seed, std::uint64_t p) {
        const auto d = sample_st_angle(StStream{seed}, p);
        return py::make_tuple(d.theta, d.attempts);
    }, py::arg("seed"), py::arg("p"), "(theta, attempts) for prime p.");
    m.def("synthetic_sequence", [](std::uint64_t limit, std::uint64_t seed, const std::string& rule) {
        PrimePowerRule r;
        r.kind = parse_rule_kind(rule);
        return build_synthetic_sequence({limit, seed, r}, build_spf_sieve(limit)).sequence;
    }, py::arg("limit"), py::arg("seed"), py::arg("rule") = "hecke-chebyshev");

    m.def("st_cdf", &st_cdf, py::arg("alpha"));
    m.def("st_density", &st_density, py::arg("theta"));
    m.def("h_gamma", &h_gamma, py::arg("gamma"));
    m.def("st_log_moments", [] {
        const auto lm = st_log_moments();
        return py::make_tuple(lm.m1, lm.m2);
    });
    m.def("st_constants", [] {
        const auto k = st_constants();
        py::dict d;
        d["h1"] = k.h1;
        d["h1_closed"] = k.h1_closed;
        d["clt_c"] = k.clt_c;
        d["clt_c_quadrature"] = k.clt_c_quadrature;
        d["log_mean"] = k.log_mean;
        d["abs_cos_moment"] = k.abs_cos_moment;
        d["signed_cos_moment"] = k.signed_cos_moment;
        d["half_density"] = k.half_density;
        d["half_density_quadrature"] = k.half_density_quadrature;
        return d;
    });

    m.def("verify_thm1", [](const NormalizedSequence& s, double eps, const std::vector<std::uint64_t>& cps) {
        return report_to_json(verify_thm1(s, eps, make_checkpoints(cps, s.limit)));
    }, py::arg("sequence"), py::arg("epsilon") = 0.25, py::arg("checkpoints") = std::vector<std::uint64_t>{});
    m.def("verify_thm2", [](const NormalizedSequence& s, const std::vector<std::uint64_t>& cps) {
        return report_to_json(verify_thm2(s, build_spf_sieve(s.limit), make_checkpoints(cps, s.limit)));
    }, py::arg("sequence"), py::arg("checkpoints") = std::vector<std::uint64_t>{});
    m.def("verify_thm3", [](const NormalizedSequence& s, std::uint64_t x, const std::string& support, double A,
                            const std::string& standardization) {
        if (x == 0) x = s.limit;
        return report_to_json(verify_thm3(s, build_spf_sieve(x), x, {parse_support(support), A},
                                          parse_standardization(standardization)));
    }, py::arg("sequence"), py::arg("x") = 0, py::arg("support") = "nonzero", py::arg("A") = 2.0,
          py::arg("standardization") = "self");
    m.def("verify_lemma_sums", [](const NormalizedSequence& s, const std::vector<double>& gammas,
                                  const std::vector<std::uint64_t>& cps) {
        return report_to_json(verify_lemma_sums(s, gammas, make_checkpoints(cps, s.limit)));
    }, py::arg("sequence"), py::arg("gammas") = std::vector<double>{0.5, 1.0, 1.5},
          py::arg("checkpoints") = std::vector<std::uint64_t>{});
    m.def("verify_hall_tenenbaum", [](const std::vector<double>& f, std::uint64_t x) {
        if (f.size() < x + 1) throw InputError("f must have length >= x + 1");
        return report_to_json(verify_hall_tenenbaum(f, x, build_spf_sieve(x)));
    }, py::arg("f"), py::arg("x"));
}
