// Python bindings: a Session owns one engine and exposes the main
// operations directly (handles in, handles out), plus the line protocol for
// scripted use.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "sigstr/engine.hpp"
#include "sigstr/order.hpp"
#include "sigstr/slp.hpp"

namespace py = pybind11;
using namespace sigstr;

namespace {

Handle checked(const Engine& e, Handle h) {
  if (h >= const_cast<Engine&>(e).store().size())
    throw std::out_of_range("unknown handle " + std::to_string(h));
  return h;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Persistent string collection: canonical handles, logarithmic "
      "concat/split/compare, activatable pattern search, searchable edit "
      "history.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const EpochChange&) {
      PyErr_SetString(PyExc_RuntimeError,
                      "restarts kept pre-empting the query");
    }
  });

  py::class_<Engine>(m, "Session")
      .def(py::init([](std::uint64_t seed, unsigned bits) {
             Config cfg;
             cfg.bits = bits;
             return new Engine(seed, cfg);
           }),
           py::arg("seed") = 0, py::arg("bits") = 64)
      .def(
          "make",
          [](Engine& e, const std::string& s) {
            if (s.empty()) throw std::invalid_argument("empty string");
            return e.store().make_string(s);
          },
          py::arg("text"), "Intern a string; returns its handle.")
      .def(
          "concat",
          [](Engine& e, Handle a, Handle b) {
            return e.store().concat(checked(e, a), checked(e, b));
          },
          py::arg("a"), py::arg("b"))
      .def(
          "split",
          [](Engine& e, Handle h, Len k) {
            checked(e, h);
            if (k < 1 || k >= e.store().length(h))
              throw std::out_of_range("split point");
            return e.store().split(h, k);
          },
          py::arg("h"), py::arg("k"),
          "Split into the first k characters and the rest.")
      .def("length",
           [](Engine& e, Handle h) { return e.store().length(checked(e, h)); })
      .def("text",
           [](Engine& e, Handle h) { return e.store().str(checked(e, h)); })
      .def(
          "eq",
          [](Engine& e, Handle a, Handle b) {
            return e.store().sig(checked(e, a)) == e.store().sig(checked(e, b));
          },
          py::arg("a"), py::arg("b"))
      .def(
          "compare",
          [](Engine& e, Handle a, Handle b) {
            return compare(e.store().collection(), checked(e, a),
                           checked(e, b));
          },
          py::arg("a"), py::arg("b"), "-1, 0 or 1 in lexicographic order.")
      .def(
          "lcp",
          [](Engine& e, Handle a, Handle b) {
            return lcp(e.store().collection(), checked(e, a), checked(e, b));
          },
          py::arg("a"), py::arg("b"))
      .def(
          "activate",
          [](Engine& e, Handle h) {
            checked(e, h);
            retry_on_epoch_change([&] { e.match_index().activate(h); });
          },
          py::arg("h"))
      .def("deactivate",
           [](Engine& e, Handle h) { e.match_index().deactivate(checked(e, h)); })
      .def(
          "find",
          [](Engine& e, const std::string& p, std::size_t limit) {
            return retry_on_epoch_change(
                [&] { return e.match_index().find(p, limit); });
          },
          py::arg("pattern"), py::arg("limit") = 0,
          "Sorted (handle, position) pairs over the active strings.")
      .def(
          "hist_insert",
          [](Engine& e, Len pos, const std::string& c) {
            if (c.size() != 1)
              throw std::invalid_argument("one character expected");
            return e.history().apply_insert(pos, (unsigned char)c[0]);
          },
          py::arg("pos"), py::arg("char"))
      .def("hist_delete",
           [](Engine& e, Len l, Len r) { return e.history().apply_delete(l, r); })
      .def("hist_move",
           [](Engine& e, Len l, Len r, Len dest) {
             return e.history().apply_move(l, r, dest);
           })
      .def("hist_version", [](Engine& e) { return e.history().version(); })
      .def("hist_text",
           [](Engine& e, std::int64_t v) -> std::optional<std::string> {
             auto h = e.history().at(v);
             if (!h) return std::nullopt;
             return e.store().str(*h);
           })
      .def(
          "hist_find",
          [](Engine& e, const std::string& p, std::size_t limit) {
            return retry_on_epoch_change(
                [&] { return e.history().find(p, limit); });
          },
          py::arg("pattern"), py::arg("limit") = 0,
          "Chronological (version, position) pairs of first appearances.")
      .def(
          "slp_eq",
          [](Engine& e, const std::string& a, const std::string& b) {
            return slp_eq(e.store(), a, b);
          },
          py::arg("file_a"), py::arg("file_b"),
          "Compare the texts of two straight-line grammar files.")
      .def("epoch", [](Engine& e) { return e.store().epoch(); })
      .def("size", [](Engine& e) { return e.store().size(); })
      .def(
          "run",
          [](Engine& e, const std::string& line) {
            return e.run_line(line, 0);
          },
          py::arg("line"), "Execute one protocol line; returns the reply.");
}
