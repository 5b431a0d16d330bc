#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capax/error.hpp"
#include "capax/fga.hpp"
#include "capax/idempotents.hpp"
#include "capax/spaces.hpp"
#include "capax/summands.hpp"

namespace py = pybind11;
using namespace capax;

namespace {

py::object py_int(const Int& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::object capacity_value(const spaces::CapacityResult& c) {
    switch (c.kind) {
    case spaces::CapacityResult::Kind::Finite: return py_int(c.value);
    case spaces::CapacityResult::Kind::Infinite: return py::str("inf");
    case spaces::CapacityResult::Kind::Unknown: return py::str("unknown");
    }
    return py::none();
}

py::dict capacity_dict(const spaces::CapacityResult& c) {
    py::dict d;
    d["capacity"] = capacity_value(c);
    if (c.kind == spaces::CapacityResult::Kind::Unknown) d["reason"] = c.reason;
    return d;
}

Int int_from_py(const py::int_& v) { return Int(static_cast<std::string>(py::repr(v))); }

IntMatrix matrix_from_py(const std::vector<std::vector<py::int_>>& rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows[0].size();
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw Error(ErrorCode::Invariant, "matrix rows have unequal length");
        for (std::size_t j = 0; j < n; ++j) a(i, j) = int_from_py(rows[i][j]);
    }
    return a;
}

py::list matrix_to_py(const IntMatrix& a) {
    py::list rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < a.cols(); ++j) row.append(py_int(a(i, j)));
        rows.append(row);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_capax, m) {
    m.doc() = "Exact capacity calculator for Moore and Eilenberg-MacLane spaces";

    py::register_exception<Error>(m, "CapaxError");

    m.def("capacity", [](const std::string& expr) {
        return capacity_dict(spaces::capacity(spaces::parse(expr)));
    }, py::arg("expr"), "Capacity of a space expression.");

    m.def("dominated", [](const std::string& expr) {
        std::vector<std::string> out;
        for (const auto& t : spaces::dominated_types(spaces::parse(expr)))
            out.push_back(spaces::print(t));
        return out;
    }, py::arg("expr"), "Homotopy types dominated by a space, as canonical expressions.");

    m.def("normalize", [](const std::string& expr) {
        return spaces::print(spaces::parse(expr));
    }, py::arg("expr"), "Parse and reprint an expression canonically.");

    m.def("summands", [](const std::string& group) {
        const auto g = fga::parse_group(group);
        const auto count = summands::count_summands(g);
        py::dict d;
        d["count"] = count.is_infinite ? py::object(py::str("inf")) : py_int(count.value);
        if (!count.is_infinite) {
            std::vector<std::string> classes;
            if (g.is_rationals()) classes = {"0", "Q"};
            else for (const auto& c : summands::enumerate_summands(g)) classes.push_back(fga::to_string(c));
            d["classes"] = classes;
        }
        return d;
    }, py::arg("group"), "Direct summands of a group literal, up to isomorphism.");

    m.def("homology", [](const std::string& expr, std::uint64_t i) {
        return fga::to_string(spaces::homology(spaces::parse(expr), i));
    }, py::arg("expr"), py::arg("degree"));

    m.def("homotopy_group", [](const std::string& expr, std::uint64_t i) {
        return fga::to_string(spaces::homotopy_group(spaces::parse(expr), i));
    }, py::arg("expr"), py::arg("degree"));

    m.def("pp_form", [](const std::string& expr) {
        return spaces::print(spaces::moore_pseudoprojective_form(spaces::parse(expr)));
    }, py::arg("expr"), "Pseudo-projective suspension form of a Moore atom.");

    m.def("group_canonical", [](const std::string& group) {
        return fga::to_string(fga::parse_group(group));
    }, py::arg("group"), "Canonical form of a group literal.");

    m.def("smith_normal_form", [](const std::vector<std::vector<py::int_>>& rows) {
        const auto r = fga::smith_normal_form(matrix_from_py(rows));
        return py::make_tuple(matrix_to_py(r.d), matrix_to_py(r.u), matrix_to_py(r.v));
    }, py::arg("matrix"), "Returns (d, u, v) with u * a * v = d.");

    m.def("oracle_count_summands", [](const std::string& group, std::uint64_t cap) {
        summands::OracleOptions opt;
        opt.order_cap = cap;
        return summands::oracle_count_summands(fga::parse_group(group), opt);
    }, py::arg("group"), py::arg("cap") = 64);

    m.def("idempotents", [](const std::string& group) {
        const auto report = idempotents::bound_report(fga::parse_group(group));
        py::dict d;
        d["count"] = report.count.is_infinite ? py::object(py::str("inf")) : py_int(report.count.value);
        d["em_capacity"] = capacity_value(report.em_capacity);
        d["bound_holds"] = report.bound_holds ? py::object(py::bool_(*report.bound_holds)) : py::none();
        if (report.count.is_infinite) d["witness"] = report.count.witness;
        return d;
    }, py::arg("group"), "Idempotent-endomorphism report for a group literal.");
}
