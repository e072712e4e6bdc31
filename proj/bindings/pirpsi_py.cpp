#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pirpsi/analysis.hpp"
#include "pirpsi/construct.hpp"
#include "pirpsi/core.hpp"
#include "pirpsi/privacy.hpp"
#include "pirpsi/retrieve.hpp"
#include "pirpsi/storage.hpp"

namespace py = pybind11;
using namespace pirpsi;

namespace {

py::list query_to_py(const query& q) {
    py::list rows;
    for (const auto& cw : q.codewords) {
        py::list terms;
        for (const auto& [m, i] : cw) terms.append(py::make_tuple(m, i));
        rows.append(std::move(terms));
    }
    return rows;
}

py::dict code_to_py(const code& c) {
    py::dict d;
    d["k"] = c.params.k;
    d["demand"] = c.params.demand;
    d["si"] = py::make_tuple(c.params.si.first, c.params.si.second);
    d["query_n1"] = query_to_py(c.query_n1);
    d["query_n2"] = query_to_py(c.query_n2);
    return d;
}

code make_code(int k, int demand, int a, int b) {
    code c;
    c.params = make_params(k, demand, a, b);
    c.query_n1 = build_query_n1(k);
    if (k <= 7)
        c.query_n2 = synthesize_n2(c.query_n1, k, c.params.demand, c.params.si);
    else if (demand == 1 && c.params.si.first == 2 && c.params.si.second == 3)
        c.query_n2 = build_query_n2(c.query_n1, c.params);
    else
        throw scheme_error("non-canonical triples need K <= 7");
    return c;
}

}  // namespace

PYBIND11_MODULE(pirpsi_py, m) {
    m.doc() =
        "Two-database XOR private information retrieval with side information";

    py::register_exception<scheme_error>(m, "SchemeError");

    m.def("msg_len", &msg_len, py::arg("k"), "Message length in bits");
    m.def("half_len", &half_len, py::arg("k"), "Half message length in bits");

    m.def(
        "build_code",
        [](int k, int demand, int a, int b) { return code_to_py(make_code(k, demand, a, b)); },
        py::arg("k"), py::arg("demand") = 1, py::arg("a") = 2, py::arg("b") = 3,
        "Both database queries for one (demand, side-information) triple, as "
        "lists of (message_id, bit_index) codeword terms");

    m.def(
        "render_code",
        [](int k, int demand, int a, int b) {
            const code c = make_code(k, demand, a, b);
            return py::make_tuple(render(c.query_n1), render(c.query_n2));
        },
        py::arg("k"), py::arg("demand") = 1, py::arg("a") = 2, py::arg("b") = 3,
        "Both queries in letter+index text form");

    m.def(
        "code_document",
        [](int k, int demand, int a, int b) {
            return code_to_json(make_code(k, demand, a, b));
        },
        py::arg("k"), py::arg("demand") = 1, py::arg("a") = 2, py::arg("b") = 3,
        "The JSON code document");

    m.def(
        "rate_table",
        [](int kmin, int kmax) {
            py::list rows;
            for (const auto& r : rate_table(kmin, kmax)) {
                py::dict d;
                d["k"] = r.k;
                d["rate_this_scheme"] = py::make_tuple(r.rate_this_scheme.num,
                                                       r.rate_this_scheme.den);
                d["rate_mds_psi"] =
                    py::make_tuple(r.rate_mds_psi.num, r.rate_mds_psi.den);
                d["rate_no_si"] = py::make_tuple(r.rate_no_si.num, r.rate_no_si.den);
                d["download_bits"] = r.download_bits;
                d["demand_bits"] = r.demand_bits;
                rows.append(std::move(d));
            }
            return rows;
        },
        py::arg("kmin"), py::arg("kmax"),
        "Closed-form rates as (numerator, denominator) pairs");

    m.def(
        "audit",
        [](int k, bool oracle) {
            const audit_report rep = audit_privacy(k, oracle);
            py::list entries;
            for (const auto& e : rep.entries) {
                py::dict d;
                d["demand"] = e.demand;
                d["si"] = py::make_tuple(e.si.first, e.si.second);
                d["case"] = e.case_id;
                d["structure_match"] = e.structure_match;
                d["decodable"] = e.decodable;
                d["note"] = e.note;
                d["pass"] = e.pass();
                entries.append(std::move(d));
            }
            py::dict d;
            d["k"] = rep.k;
            d["used_search"] = rep.used_search;
            d["all_pass"] = rep.all_pass();
            d["entries"] = std::move(entries);
            return d;
        },
        py::arg("k"), py::arg("oracle") = false,
        "Structure + decodability audit over every triple");

    m.def(
        "roundtrip_decode",
        [](int k, int demand, int a, int b, std::uint64_t seed) {
            const code c = make_code(k, demand, a, b);
            const message_store store = random_store(k, seed);
            const answer_vector ans1 = answer_query(store, c.query_n1);
            const answer_vector ans2 = answer_query(store, c.query_n2);
            const si_bits si = si_from_store(store, c.params);
            const decode_result res = decode_demand(c, ans1, ans2, si);
            const auto& want = store.bits[static_cast<std::size_t>(c.params.demand - 1)];
            py::dict d;
            d["ok"] = res.demand_bits == want;
            d["demand_bits"] = res.demand_bits;
            d["xor_count"] = res.trace.xor_count;
            d["downloaded_bits"] = ans1.size() + ans2.size();
            return d;
        },
        py::arg("k"), py::arg("demand") = 1, py::arg("a") = 2, py::arg("b") = 3,
        py::arg("seed") = 1,
        "Full in-process retrieval round trip over a random store");
}
