#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "nkc/complex.hpp"
#include "nkc/corpus.hpp"
#include "nkc/geometry.hpp"
#include "nkc/json_io.hpp"
#include "nkc/surface.hpp"

namespace py = pybind11;
using namespace nkc;

namespace {

// nlohmann values cross the boundary through the json module; the payloads are small.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::handle& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::object count(const KissCount& k) {
    if (k.infinite) return py::float_(std::numeric_limits<double>::infinity());
    return py::int_(k.value);
}

Facet facet_of(const WalkSpace& ws, const std::vector<std::string>& keys) {
    std::vector<Walk> walks;
    for (const auto& k : keys) walks.push_back(parse_walk(ws, k));
    return Facet::of(walks);
}

std::vector<std::string> keys_of(const Facet& f) {
    std::vector<std::string> out;
    for (const Walk& w : f.walks) out.push_back(w.key);
    return out;
}

}  // namespace

PYBIND11_MODULE(_nkc, m) {
    m.doc() = "Non-kissing complexes of locally gentle quivers";

    py::register_exception<QuiverError>(m, "QuiverError", PyExc_ValueError);
    py::register_exception<WalkError>(m, "WalkError", PyExc_ValueError);
    py::register_exception<ComplexError>(m, "ComplexError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);
    py::register_exception<SurfaceError>(m, "SurfaceError", PyExc_RuntimeError);

    py::class_<BoundQuiver>(m, "Quiver")
        .def_static(
            "load",
            [](const std::string& source) {
                BoundQuiver q = std::filesystem::exists(source) ? read_quiver_file(source) : corpus_quiver(source);
                return validate_locally_gentle(q);
            },
            py::arg("source"), "Quiver JSON file or corpus name such as 'cambrian:RL'")
        .def_static("from_dict", [](const py::dict& d) { return validate_locally_gentle(quiver_from_json(from_py(d))); })
        .def("to_dict", [](const BoundQuiver& q) { return to_py(quiver_to_json(q)); })
        .def_property_readonly("vertices", &BoundQuiver::vertices)
        .def_property_readonly("num_arrows", &BoundQuiver::num_arrows)
        .def("blossom", [](const BoundQuiver& q) { return blossom(q).full; })
        .def("koszul_dual", [](const BoundQuiver& q) { return koszul_dual(q); })
        .def("isomorphic", [](const BoundQuiver& a, const BoundQuiver& b) { return isomorphic(a, b); })
        .def("__eq__", [](const BoundQuiver& a, const BoundQuiver& b) { return a == b; })
        .def("__repr__", [](const BoundQuiver& q) {
            return "<Quiver " + std::to_string(q.num_vertices()) + " vertices, " + std::to_string(q.num_arrows()) +
                   " arrows>";
        });

    m.def("corpus", [] {
        std::vector<std::string> names;
        for (const CorpusEntry& e : builtin_corpus()) names.push_back(e.name);
        return names;
    });
    m.def("random_quiver", &random_locally_gentle, py::arg("max_vertices"), py::arg("seed"));

    m.def(
        "walks",
        [](const BoundQuiver& q, int body_bound) {
            WalkSpace ws(q);
            WalkEnumeration e = enumerate_walks(ws, body_bound);
            std::vector<std::string> keys;
            for (const Walk& w : e.walks) keys.push_back(w.key);
            return py::make_tuple(keys, e.complete);
        },
        py::arg("quiver"), py::arg("body_bound") = 12, "(walk keys, complete)");
    m.def("kissing_number", [](const BoundQuiver& q, const std::string& a, const std::string& b) {
        WalkSpace ws(q);
        return count(kissing_number(ws, parse_walk(ws, a), parse_walk(ws, b)));
    });
    m.def(
        "facets",
        [](const BoundQuiver& q, int max_facets) {
            WalkSpace ws(q);
            FlipGraph g = enumerate_facets(ws, max_facets);
            std::vector<std::vector<std::string>> out;
            for (const Facet& f : g.facets) out.push_back(keys_of(f));
            return py::make_tuple(out, g.closed);
        },
        py::arg("quiver"), py::arg("max_facets") = 500, "(facets as lists of walk keys, closed)");
    m.def(
        "flip_graph",
        [](const BoundQuiver& q, int max_facets) {
            WalkSpace ws(q);
            return to_py(flip_graph_json(enumerate_facets(ws, max_facets)));
        },
        py::arg("quiver"), py::arg("max_facets") = 500);
    m.def("flip", [](const BoundQuiver& q, const std::vector<std::string>& facet, const std::string& walk) {
        WalkSpace ws(q);
        FlipResult r = flip(ws, facet_of(ws, facet), parse_walk(ws, walk));
        return py::make_tuple(keys_of(r.facet), r.added.key);
    });

    m.def("g_vector", [](const BoundQuiver& q, const std::string& w) {
        WalkSpace ws(q);
        return g_vector(ws, parse_walk(ws, w));
    });
    m.def("c_vector", [](const BoundQuiver& q, const std::vector<std::string>& facet, const std::string& w) {
        WalkSpace ws(q);
        return c_vector(ws, facet_of(ws, facet), parse_walk(ws, w));
    });
    m.def("d_vector", [](const BoundQuiver& q, const std::string& w) {
        WalkSpace ws(q);
        DVector d = d_vector(ws, parse_walk(ws, w));
        py::list out;
        for (size_t a = 0; a < d.values.size(); ++a)
            out.append(d.infinite[a] ? py::object(py::float_(std::numeric_limits<double>::infinity()))
                                     : py::object(py::int_(d.values[a])));
        return out;
    });
    m.def(
        "fan",
        [](const BoundQuiver& q, int max_facets) {
            WalkSpace ws(q);
            return to_py(fan_json(build_fan(ws, enumerate_facets(ws, max_facets))));
        },
        py::arg("quiver"), py::arg("max_facets") = 500);
    m.def(
        "polytope",
        [](const BoundQuiver& q, int max_facets, int body_bound) {
            WalkSpace ws(q);
            FlipGraph g = enumerate_facets(ws, max_facets);
            return to_py(polytope_json(build_associahedron(ws, g, enumerate_walks(ws, body_bound))));
        },
        py::arg("quiver"), py::arg("max_facets") = 500, py::arg("body_bound") = 12);

    m.def("surface", [](const BoundQuiver& q) { return to_py(invariants_json(invariants(surface_from_quiver(q)))); });
    m.def("surface_map", [](const BoundQuiver& q) { return to_py(surface_json(surface_from_quiver(q))); });
    m.def("roundtrip", [](const BoundQuiver& q) {
        SurfaceModel s = surface_from_quiver(q);
        py::dict d;
        d["quiver_roundtrip"] = isomorphic(quiver_from_surface(s, Dissection::D), q);
        d["koszul_swap"] = isomorphic(quiver_from_surface(swap_dissections(s), Dissection::D), koszul_dual(q));
        d["dual_dissection"] = same_map(dual_dissection(strip_dual(s)), s);
        return d;
    });
    m.def("crossing_count", [](const BoundQuiver& q, const std::string& a, const std::string& b) {
        WalkSpace ws(q);
        SurfaceModel s = surface_from_quiver(q);
        return count(crossing_count(s, ws, curve_of_walk(s, ws, parse_walk(ws, a)), curve_of_walk(s, ws, parse_walk(ws, b))));
    });
}
