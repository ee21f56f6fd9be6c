#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/config.hpp"
#include "satrestore/core/error.hpp"
#include "satrestore/exposedness/masks.hpp"
#include "satrestore/fuse/hdr_merge.hpp"
#include "satrestore/fuse/mef_fusion.hpp"
#include "satrestore/harness/camera.hpp"
#include "satrestore/harness/experiment.hpp"
#include "satrestore/harness/pipeline.hpp"
#include "satrestore/harness/refiner.hpp"
#include "satrestore/harness/scene.hpp"
#include "satrestore/nonlocal/nonlocal.hpp"
#include "satrestore/objective/losses.hpp"
#include "satrestore/objective/mef_ssim.hpp"
#include "satrestore/objective/metrics.hpp"
#include "satrestore/synthgen/synthesis.hpp"

namespace py = pybind11;
using namespace satrestore;

namespace {

template <class T>
using Array = py::array_t<T, py::array::c_style | py::array::forcecast>;

template <class T>
Image<T> to_image(const Array<T>& a) {
    if (a.ndim() == 2) {
        Image<T> img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), 1);
        std::memcpy(img.data().data(), a.data(), img.size() * sizeof(T));
        return img;
    }
    if (a.ndim() != 3) throw ShapeError("expected an (H, W) or (H, W, C) array");
    Image<T> img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), static_cast<int>(a.shape(2)));
    std::memcpy(img.data().data(), a.data(), img.size() * sizeof(T));
    return img;
}

template <class T>
py::array_t<T> to_array(const Image<T>& img) {
    std::vector<py::ssize_t> shape{img.height(), img.width()};
    if (img.channels() != 1) shape.push_back(img.channels());
    py::array_t<T> out(shape);
    std::memcpy(out.mutable_data(), img.data().data(), img.size() * sizeof(T));
    return out;
}

FeatureMap to_feature_map(const Array<double>& a) {
    if (a.ndim() != 3) throw ShapeError("expected a (C, H, W) array");
    FeatureMap m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)), static_cast<int>(a.shape(2)));
    std::memcpy(m.data().data(), a.data(), m.data().size() * sizeof(double));
    return m;
}

py::array_t<double> to_array(const FeatureMap& m) {
    py::array_t<double> out({m.channels(), m.height(), m.width()});
    std::memcpy(out.mutable_data(), m.data().data(), m.data().size() * sizeof(double));
    return out;
}

std::vector<LdrImage> to_images(const std::vector<Array<std::uint8_t>>& arrays) {
    std::vector<LdrImage> out;
    out.reserve(arrays.size());
    for (const auto& a : arrays) out.push_back(to_image(a));
    return out;
}

Crf as_crf(const py::object& obj) {
    if (py::isinstance<Crf>(obj)) return obj.cast<Crf>();
    if (py::isinstance<py::str>(obj)) return Crf::from_spec(obj.cast<std::string>());
    return Crf::gamma(obj.cast<double>());
}

KeyValueConfig to_config(const py::dict& d) {
    std::ostringstream text;
    for (const auto& [k, v] : d) {
        const std::string value = py::isinstance<py::bool_>(v) ? (v.cast<bool>() ? "1" : "0") : py::str(v).cast<std::string>();
        text << py::str(k).cast<std::string>() << " = " << value << "\n";
    }
    return KeyValueConfig::parse(text.str(), "<dict>");
}

py::object parse_json(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

}  // namespace

PYBIND11_MODULE(_satrestore, m) {
    m.doc() = "Saturation restoration core";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception<ShapeError>(m, "ShapeError", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    py::class_<Crf>(m, "Crf")
        .def_static("gamma", &Crf::gamma, py::arg("gamma"))
        .def_static("tabulated",
                    [](const Array<double>& t) {
                        if (t.ndim() != 2 || t.shape(0) != 3 || t.shape(1) != 256)
                            throw ShapeError("CRF table must have shape (3, 256)");
                        CrfTable table{};
                        for (int c = 0; c < 3; ++c)
                            for (int z = 0; z < 256; ++z) table[c][z] = t.at(c, z);
                        return Crf::tabulated(table);
                    })
        .def_static("from_spec", &Crf::from_spec, py::arg("spec"))
        .def_property_readonly("is_gamma", [](const Crf& c) { return c.kind() == Crf::Kind::Gamma; })
        .def_property_readonly("gamma_value", &Crf::gamma_value)
        .def("apply", &Crf::apply, py::arg("exposure"), py::arg("channel") = 0)
        .def("invert", &Crf::invert, py::arg("level"), py::arg("channel") = 0);

    m.def(
        "synthesize",
        [](const Array<std::uint8_t>& z1, const py::object& crf, double dt1, double ratio, const std::string& mode) {
            const LdrImage img = to_image(z1);
            const Crf f = as_crf(crf);
            const ExposureConfig cfg = ExposureConfig::from_ratio(dt1, ratio);
            SynthesisOptions opts;
            opts.mode = parse_weight_mode(mode);
            return py::make_tuple(to_array(synthesize_dark_detailed(img, f, cfg, opts).image),
                                  to_array(synthesize_bright_detailed(img, f, cfg, opts).image));
        },
        py::arg("z1"), py::arg("crf") = 2.2, py::arg("dt1") = 1.0, py::arg("ratio") = 4.0, py::arg("mode") = "verbatim",
        "Dark and bright synthetic exposures of an 8-bit RGB image.");

    m.def(
        "masks",
        [](const Array<std::uint8_t>& z1, int xi_u, int xi_l) {
            const ExposednessMasks mk = compute_masks(to_image(z1), xi_u, xi_l);
            return py::make_tuple(to_array(mk.m0), to_array(mk.m2));
        },
        py::arg("z1"), py::arg("xi_u") = 250, py::arg("xi_l") = 200);

    m.def(
        "fuse",
        [](const Array<std::uint8_t>& z0, const Array<std::uint8_t>& z1, const Array<std::uint8_t>& z2, int extra) {
            FusionOptions opts;
            opts.extra_levels = extra;
            return to_array(mef_fuse(to_image(z0), to_image(z1), to_image(z2), opts));
        },
        py::arg("z0"), py::arg("z1"), py::arg("z2"), py::arg("extra_levels") = 1);

    m.def(
        "hdr_merge",
        [](const std::vector<Array<std::uint8_t>>& images, const std::vector<double>& times, const py::object& crf) {
            return to_array(hdr_merge(to_images(images), times, as_crf(crf)));
        },
        py::arg("images"), py::arg("times"), py::arg("crf") = 2.2);

    m.def(
        "mef_ssim",
        [](const Array<std::uint8_t>& fused, const std::vector<Array<std::uint8_t>>& refs) {
            return mef_ssim(to_image(fused), to_images(refs));
        },
        py::arg("fused"), py::arg("refs"));
    m.def(
        "ssim", [](const Array<std::uint8_t>& a, const Array<std::uint8_t>& b) { return ssim(to_image(a), to_image(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "psnr", [](const Array<std::uint8_t>& a, const Array<std::uint8_t>& b) { return psnr(to_image(a), to_image(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "mse", [](const Array<std::uint8_t>& a, const Array<std::uint8_t>& b) { return mse(to_image(a), to_image(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "color_angle_loss",
        [](const Array<double>& a, const Array<double>& b) { return color_angle_loss(to_image(a), to_image(b)); },
        py::arg("a"), py::arg("b"));

    m.def(
        "nonlocal_channel", [](const Array<double>& x) { return to_array(nonlocal_channel(to_feature_map(x))); },
        py::arg("x"), "Channel non-local block on a (C, H, W) array.");
    m.def(
        "nonlocal_spatial",
        [](const Array<double>& x, const std::vector<double>& key, const std::vector<double>& query,
           const std::vector<double>& value) {
            const FeatureMap fm = to_feature_map(x);
            NdmParams p = NdmParams::zeros(fm.channels());
            p.key = key;
            p.query = query;
            p.value = value;
            return to_array(nonlocal_spatial(fm, p));
        },
        py::arg("x"), py::arg("key"), py::arg("query"), py::arg("value"),
        "Spatial non-local block; each projection is a row-major C x C matrix.");

    m.def(
        "scene",
        [](std::uint64_t seed, int width, int height, double dynamic_range) {
            return to_array(generate_scene(random_scene(seed, width, height, dynamic_range)));
        },
        py::arg("seed"), py::arg("width") = 512, py::arg("height") = 512, py::arg("dynamic_range") = 1e4,
        "Random synthetic radiance scene as an (H, W, 3) float array.");

    m.def(
        "capture",
        [](const Array<double>& radiance, const py::object& crf, double dt1, double ratio) {
            const ExposureTriplet t =
                make_triplet(to_image(radiance), as_crf(crf), ExposureConfig::from_ratio(dt1, ratio));
            return py::make_tuple(to_array(t.images[0]), to_array(t.images[1]), to_array(t.images[2]));
        },
        py::arg("radiance"), py::arg("crf") = 2.2, py::arg("dt1") = 1.0, py::arg("ratio") = 4.0,
        "Noiseless exposure triplet of a radiance map.");

    m.def(
        "restore",
        [](const Array<std::uint8_t>& z1, const py::object& crf, const std::string& refiner, double dt1, double ratio) {
            const auto r = make_refiner(refiner);
            const PipelineResult res =
                restore_pipeline(to_image(z1), as_crf(crf), ExposureConfig::from_ratio(dt1, ratio), *r);
            py::dict out;
            out["z0"] = to_array(res.z0);
            out["z2"] = to_array(res.z2);
            out["m0"] = to_array(res.masks.m0);
            out["m2"] = to_array(res.masks.m2);
            out["fused"] = to_array(res.fused);
            out["hdr"] = res.hdr ? py::object(to_array(*res.hdr)) : py::none();
            return out;
        },
        py::arg("z1"), py::arg("crf") = 2.2, py::arg("refiner") = "identity", py::arg("dt1") = 1.0,
        py::arg("ratio") = 4.0);

    m.def(
        "run_experiment",
        [](const py::dict& config) {
            const ExperimentReport report = [&] {
                const ExperimentConfig cfg = ExperimentConfig::from(to_config(config));
                py::gil_scoped_release release;
                return run_experiment(cfg);
            }();
            return parse_json(report.to_json());
        },
        py::arg("config") = py::dict(), "Runs the synthetic suite and returns the JSON report as a dict.");
}
