#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "hdepth/depth_low_d.hpp"
#include "hdepth/exact.hpp"
#include "hdepth/testing.hpp"

namespace py = pybind11;
using namespace hdepth;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& points) {
  if (points.ndim() == 1) {
    const auto n = static_cast<std::size_t>(points.shape(0));
    return PointCloud(n, 1, std::vector<double>(points.data(), points.data() + n));
  }
  if (points.ndim() != 2) throw Error(ErrorCode::DimensionMismatch, "points must be an (n, d) array");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto d = static_cast<std::size_t>(points.shape(1));
  return PointCloud(n, d, std::vector<double>(points.data(), points.data() + n * d));
}

py::array_t<double> to_array(const PointCloud& cloud) {
  py::array_t<double> out({cloud.size(), cloud.dim()});
  std::copy(cloud.coords().begin(), cloud.coords().end(), out.mutable_data());
  return out;
}

ToleranceParams make_tol(double eps, bool absolute) {
  return {eps, absolute ? ScaleMode::Absolute : ScaleMode::Relative};
}

// "rec" | "comb2" | "comb" | "auto" | "k=<int>"
std::pair<Variant, int> variant_from(const std::string& name) {
  if (name == "rec") return {Variant::Rec, 1};
  if (name == "comb2") return {Variant::Comb2, 0};
  if (name == "comb") return {Variant::Comb, 0};
  if (name == "auto") return {Variant::Auto, 0};
  if (name.rfind("k=", 0) == 0) return {Variant::GenericK, std::stoi(name.substr(2))};
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + name + "'");
}

AlgorithmOptions make_options(const std::string& algorithm, bool early_exit, bool normalize,
                              double eps, bool absolute, int workers) {
  AlgorithmOptions o;
  std::tie(o.variant, o.k) = variant_from(algorithm);
  o.early_exit = early_exit;
  o.normalize = normalize;
  o.tol = make_tol(eps, absolute);
  o.parallel_workers = workers;
  return o;
}

testing::Distribution distribution_from(const std::string& name) {
  return testing::parse_distribution(name);
}

}  // namespace

PYBIND11_MODULE(_hdepth, m) {
  m.doc() = "Exact halfspace (Tukey) depth";

  py::register_exception<Error>(m, "DepthError", PyExc_ValueError);

  py::class_<DepthResult>(m, "DepthResult")
      .def_readonly("nhd", &DepthResult::nhd)
      .def_readonly("n", &DepthResult::n)
      .def_readonly("zeros_absorbed", &DepthResult::zeros_absorbed)
      .def_readonly("k", &DepthResult::k)
      .def_readonly("reduced_dim", &DepthResult::reduced_dim)
      .def_readonly("elapsed", &DepthResult::elapsed)
      .def_property_readonly("hd", &DepthResult::hd)
      .def_property_readonly("variant",
                             [](const DepthResult& r) { return to_string(r.variant, r.k); })
      .def("__repr__", [](const DepthResult& r) {
        return "DepthResult(nhd=" + std::to_string(r.nhd) + ", n=" + std::to_string(r.n) +
               ", variant=" + to_string(r.variant, r.k) + ")";
      });

  m.def(
      "halfspace_depth",
      [](const Array& points, std::optional<Array> z, const std::string& algorithm,
         bool early_exit, bool normalize, double eps, bool absolute, int workers) {
        const PointCloud cloud = to_cloud(points);
        std::vector<double> query(cloud.dim(), 0.0);
        if (z) query.assign(z->data(), z->data() + z->size());
        const auto opts = make_options(algorithm, early_exit, normalize, eps, absolute, workers);
        py::gil_scoped_release release;
        return halfspace_depth(cloud, query, opts);
      },
      py::arg("points"), py::arg("z") = py::none(), py::arg("algorithm") = "auto",
      py::arg("early_exit") = false, py::arg("normalize") = false, py::arg("eps") = 1e-10,
      py::arg("absolute") = false, py::arg("workers") = 1,
      "Depth of z (default: the origin) w.r.t. the rows of `points`.");

  m.def(
      "nhd1",
      [](const Array& values, double eps, bool absolute) {
        return nhd1(std::span<const double>(values.data(), values.size()), make_tol(eps, absolute));
      },
      py::arg("values"), py::arg("eps") = 1e-10, py::arg("absolute") = false);

  m.def(
      "nhd2",
      [](const Array& points, double eps, bool absolute) {
        return nhd2(to_cloud(points), make_tol(eps, absolute));
      },
      py::arg("points"), py::arg("eps") = 1e-10, py::arg("absolute") = false);

  m.def(
      "oracle_depth",
      [](const Array& points, std::optional<Array> z, double eps, bool absolute) {
        const PointCloud cloud = to_cloud(points);
        std::vector<double> query(cloud.dim(), 0.0);
        if (z) query.assign(z->data(), z->data() + z->size());
        return testing::oracle_depth(cloud, query, make_tol(eps, absolute));
      },
      py::arg("points"), py::arg("z") = py::none(), py::arg("eps") = 1e-10,
      py::arg("absolute") = false, "Brute-force reference depth for small instances.");

  m.def(
      "generate",
      [](const std::string& distribution, std::size_t d, std::size_t n, std::uint64_t seed) {
        return to_array(testing::generate({distribution_from(distribution), d, n, seed}));
      },
      py::arg("distribution"), py::arg("d"), py::arg("n"), py::arg("seed") = 0,
      "Reproducible 'normal' or 'grid' sample as an (n, d) array.");
}
