#include "einlike/errors.hpp"
#include "einlike/gray.hpp"
#include "einlike/report.hpp"
#include "einlike/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <vector>

namespace py = pybind11;
using namespace einlike;

namespace {

std::vector<std::vector<double>> mat_to_list(const Mat& m) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m.n));
    for (int i = 0; i < m.n; ++i) {
        out[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.n));
        for (int j = 0; j < m.n; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return out;
}

std::vector<std::vector<std::vector<double>>> tensor3_to_list(const Tensor3& t) {
    std::vector<std::vector<std::vector<double>>> out;
    out.resize(static_cast<std::size_t>(t.n));
    for (int a = 0; a < t.n; ++a) {
        out[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(t.n));
        for (int b = 0; b < t.n; ++b) {
            auto& row = out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            row.resize(static_cast<std::size_t>(t.n));
            for (int c = 0; c < t.n; ++c) row[static_cast<std::size_t>(c)] = t(a, b, c);
        }
    }
    return out;
}

MetricField make_metric(const std::vector<std::string>& coords,
                        const std::vector<std::vector<std::string>>& components,
                        const std::string& signature) {
    const auto sig = signature_from_name(signature);
    if (!sig) throw InputError("signature must be \"riemannian\" or \"lorentzian\"");
    const std::size_t n = coords.size();
    if (components.size() != n) throw InputError("components must be an n x n matrix of strings");
    for (const auto& row : components)
        if (row.size() != n) throw InputError("components must be an n x n matrix of strings");
    std::vector<ScalarExpr> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) upper.push_back(ScalarExpr::parse(components[i][j], coords));
    return MetricField(coords, std::move(upper), *sig);
}

TheoremId theorem_id_from_name(const std::string& name) {
    for (TheoremId id : {TheoremId::TH1, TheoremId::TH2, TheoremId::TH3, TheoremId::TH_IA,
                         TheoremId::ST_A, TheoremId::ST_B, TheoremId::ST_P})
        if (name == theorem_name(id)) return id;
    throw InputError("unknown theorem id '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curvature engine for doubly warped products and Einstein-like classification";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "EngineError");

    py::class_<Jet>(m, "Jet")
        .def_property_readonly("dim", &Jet::dim)
        .def_property_readonly("order", &Jet::order)
        .def_property_readonly("value", &Jet::value)
        .def("partial",
             [](const Jet& j, const std::vector<int>& alpha) { return j.partial(alpha); },
             py::arg("alpha"))
        .def("__repr__", [](const Jet& j) {
            return "<Jet dim=" + std::to_string(j.dim()) + " order=" + std::to_string(j.order()) +
                   " value=" + std::to_string(j.value()) + ">";
        });

    py::class_<ScalarExpr>(m, "ScalarExpr")
        .def_property_readonly("coord_names", &ScalarExpr::coord_names)
        .def("serialize", &ScalarExpr::serialize)
        .def("eval",
             [](const ScalarExpr& e, const std::vector<double>& p) { return e.eval(p); },
             py::arg("point"))
        .def("eval_jet",
             [](const ScalarExpr& e, const std::vector<double>& p, int order) {
                 return e.eval_jet(p, order);
             },
             py::arg("point"), py::arg("order"))
        .def("__repr__", [](const ScalarExpr& e) { return "<ScalarExpr " + e.serialize() + ">"; });

    m.def("parse",
          [](const std::string& src, const std::vector<std::string>& coords) {
              return ScalarExpr::parse(src, coords);
          },
          py::arg("source"), py::arg("coord_names"), "Parse a closed-form expression");

    py::class_<MetricField>(m, "MetricField")
        .def(py::init(&make_metric), py::arg("coord_names"), py::arg("components"),
             py::arg("signature") = "riemannian")
        .def_property_readonly("dim", &MetricField::dim)
        .def_property_readonly("coord_names", &MetricField::coord_names)
        .def_property_readonly("signature",
                               [](const MetricField& m_) { return signature_name(m_.signature()); })
        .def("component",
             [](const MetricField& m_, int i, int j) { return m_.component(i, j).serialize(); });

    py::class_<CurvaturePack>(m, "CurvaturePack")
        .def_property_readonly("point", [](const CurvaturePack& p) { return p.point; })
        .def_property_readonly("g", [](const CurvaturePack& p) { return mat_to_list(p.g); })
        .def_property_readonly("g_inv", [](const CurvaturePack& p) { return mat_to_list(p.g_inv); })
        .def_property_readonly("det", [](const CurvaturePack& p) { return p.det; })
        .def_property_readonly("gamma", [](const CurvaturePack& p) { return tensor3_to_list(p.gamma); })
        .def_property_readonly("ricci", [](const CurvaturePack& p) { return mat_to_list(p.ricci); })
        .def_property_readonly("scalar", [](const CurvaturePack& p) { return p.scalar; })
        .def_property_readonly("scalar_grad", [](const CurvaturePack& p) { return p.scalar_grad; })
        .def_property_readonly("nabla_ricci",
                               [](const CurvaturePack& p) { return tensor3_to_list(p.nabla_ricci); })
        .def_property_readonly("weyl_defined", [](const CurvaturePack& p) { return p.weyl_defined; })
        .def_property_readonly("cotton", [](const CurvaturePack& p) { return tensor3_to_list(p.cotton); })
        .def_property_readonly("weyl_div",
                               [](const CurvaturePack& p) { return tensor3_to_list(p.weyl_div); })
        .def("riemann", [](const CurvaturePack& p, int l, int i, int j, int k) {
            return p.riemann(l, i, j, k);
        })
        .def("weyl", [](const CurvaturePack& p, int l, int i, int j, int k) {
            return p.weyl(l, i, j, k);
        });

    m.def("christoffel",
          [](const MetricField& m_, const std::vector<double>& point) {
              return tensor3_to_list(christoffel(m_, point));
          },
          py::arg("metric"), py::arg("point"), "Levi-Civita connection coefficients");

    m.def("curvature",
          [](const MetricField& m_, const std::vector<double>& point) {
              return curvature(m_, point);
          },
          py::arg("metric"), py::arg("point"), "All curvature objects at a point");

    py::class_<ScalarFieldCalculus>(m, "ScalarFieldCalculus")
        .def_readonly("grad", &ScalarFieldCalculus::grad)
        .def_property_readonly("hess",
                               [](const ScalarFieldCalculus& s) { return mat_to_list(s.hess); })
        .def_readonly("laplacian", &ScalarFieldCalculus::laplacian);

    m.def("scalar_field_calculus",
          [](const MetricField& m_, const ScalarExpr& f, const std::vector<double>& point) {
              return scalar_field_calculus(m_, f, point);
          },
          py::arg("metric"), py::arg("f"), py::arg("point"));

    m.def("conformal_rescale",
          [](const MetricField& m_, const ScalarExpr& phi) { return conformal_rescale(m_, phi); },
          py::arg("metric"), py::arg("phi"));

    py::class_<FactorSpec>(m, "FactorSpec")
        .def(py::init([](const std::string& name, const MetricField& metric,
                         const std::string& warping) {
                 return FactorSpec{name, metric, ScalarExpr::parse(warping, metric.coord_names())};
             }),
             py::arg("name"), py::arg("metric"), py::arg("warping"))
        .def_readonly("name", &FactorSpec::name);

    py::class_<ProductSpec>(m, "ProductSpec")
        .def_property_readonly("assembled", [](const ProductSpec& s) { return s.assembled; })
        .def_property_readonly("dim", &ProductSpec::dim)
        .def("factor_point",
             [](const ProductSpec& s, int i, const std::vector<double>& p) {
                 return s.factor_point(i, p);
             })
        .def("lift_vector", [](const ProductSpec& s, int i, const std::vector<double>& v) {
            return s.lift_vector(i, v);
        });

    m.def("build_doubly_warped",
          [](const FactorSpec& f1, const FactorSpec& f2) { return build_doubly_warped(f1, f2); },
          py::arg("factor1"), py::arg("factor2"));

    m.def("f_diamond",
          [](const ProductSpec& s, int factor, const std::vector<double>& point_i) {
              return f_diamond(s, factor, point_i);
          },
          py::arg("spec"), py::arg("factor"), py::arg("point"));

    m.def("F_tensor",
          [](const ProductSpec& s, int factor, const std::vector<double>& point_i) {
              return mat_to_list(F_tensor(s, factor, point_i));
          },
          py::arg("spec"), py::arg("factor"), py::arg("point"));

    py::class_<RicciBlocks>(m, "RicciBlocks")
        .def_property_readonly("block11", [](const RicciBlocks& b) { return mat_to_list(b.block11); })
        .def_property_readonly("block22", [](const RicciBlocks& b) { return mat_to_list(b.block22); })
        .def_property_readonly("mixed", [](const RicciBlocks& b) {
            std::vector<std::vector<double>> out(static_cast<std::size_t>(b.mixed_rows));
            for (int a = 0; a < b.mixed_rows; ++a) {
                out[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(b.mixed_cols));
                for (int c = 0; c < b.mixed_cols; ++c)
                    out[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = b.mixed_at(a, c);
            }
            return out;
        });

    m.def("product_ricci_blocks",
          [](const ProductSpec& s, const std::vector<double>& point) {
              return product_ricci_blocks(s, point);
          },
          py::arg("spec"), py::arg("point"));

    m.def("nabla_ricci_restriction",
          [](const ProductSpec& s, int factor, const std::vector<double>& point,
             const std::vector<double>& x, const std::vector<double>& y,
             const std::vector<double>& z) {
              return nabla_ricci_restriction(s, factor, point, x, y, z);
          },
          py::arg("spec"), py::arg("factor"), py::arg("point"), py::arg("x"), py::arg("y"),
          py::arg("z"));

    py::class_<SpacetimeSpec>(m, "SpacetimeSpec")
        .def(py::init([](const std::string& sigma, const std::string& time_coord,
                         const MetricField& base, const std::string& f) {
                 return SpacetimeSpec{ScalarExpr::parse(sigma, {time_coord}), base,
                                      ScalarExpr::parse(f, base.coord_names())};
             }),
             py::arg("sigma"), py::arg("time_coord"), py::arg("base"), py::arg("f"));

    m.def("build_spacetime", [](const SpacetimeSpec& s) { return build_spacetime(s); },
          py::arg("spec"));
    m.def("spacetime_as_product", [](const SpacetimeSpec& s) { return spacetime_as_product(s); },
          py::arg("spec"));

    py::class_<SpacetimeBlocks>(m, "SpacetimeBlocks")
        .def_readonly("tt_formula", &SpacetimeBlocks::tt_formula)
        .def_readonly("tt_intrinsic", &SpacetimeBlocks::tt_intrinsic)
        .def_property_readonly("uv_formula",
                               [](const SpacetimeBlocks& b) { return mat_to_list(b.uv_formula); })
        .def_property_readonly("uv_intrinsic",
                               [](const SpacetimeBlocks& b) { return mat_to_list(b.uv_intrinsic); })
        .def_readonly("tu_formula", &SpacetimeBlocks::tu_formula)
        .def_readonly("tu_intrinsic", &SpacetimeBlocks::tu_intrinsic)
        .def_readonly("uv_residual", &SpacetimeBlocks::uv_residual)
        .def_readonly("tu_residual", &SpacetimeBlocks::tu_residual)
        .def_readonly("tt_finding", &SpacetimeBlocks::tt_finding)
        .def_readonly("sigma_diamond_lorentzian", &SpacetimeBlocks::sigma_diamond_lorentzian)
        .def_readonly("sigma_diamond_positive", &SpacetimeBlocks::sigma_diamond_positive);

    m.def("spacetime_ricci_blocks",
          [](const SpacetimeSpec& s, const std::vector<double>& point) {
              return spacetime_ricci_blocks(s, point);
          },
          py::arg("spec"), py::arg("point"));

    py::class_<TheoremResult>(m, "TheoremResult")
        .def_readonly("lhs", &TheoremResult::lhs)
        .def_readonly("rhs", &TheoremResult::rhs)
        .def_readonly("residual", &TheoremResult::residual)
        .def_readonly("has_variant", &TheoremResult::has_variant)
        .def_readonly("variant_rhs", &TheoremResult::variant_rhs)
        .def_readonly("variant_residual", &TheoremResult::variant_residual);

    m.def("theorem_residual",
          [](const std::string& id, const ProductSpec& spec, int factor,
             const std::vector<double>& point, const std::vector<double>& x,
             const std::vector<double>& y, const std::vector<double>& z) {
              return theorem_residual(theorem_id_from_name(id), spec, factor, point, x, y, z);
          },
          py::arg("id"), py::arg("spec"), py::arg("factor"), py::arg("point"), py::arg("x"),
          py::arg("y"), py::arg("z"));

    m.def("spacetime_theorem_residual",
          [](const std::string& id, const SpacetimeSpec& spec, const std::vector<double>& point,
             const std::vector<double>& x, const std::vector<double>& y,
             const std::vector<double>& z) {
              return theorem_residual(theorem_id_from_name(id), spec, point, x, y, z);
          },
          py::arg("id"), py::arg("spec"), py::arg("point"), py::arg("x"), py::arg("y"),
          py::arg("z"));

    py::class_<ScalarIdentityResult>(m, "ScalarIdentityResult")
        .def_readonly("display_value", &ScalarIdentityResult::display_value)
        .def_readonly("swapped_value", &ScalarIdentityResult::swapped_value)
        .def_readonly("derived_value", &ScalarIdentityResult::derived_value)
        .def_readonly("intrinsic_scalar", &ScalarIdentityResult::intrinsic_scalar)
        .def_readonly("display_residual", &ScalarIdentityResult::display_residual)
        .def_readonly("swapped_residual", &ScalarIdentityResult::swapped_residual)
        .def_readonly("derived_residual", &ScalarIdentityResult::derived_residual);

    m.def("scalar_identity_residual",
          [](const ProductSpec& spec, const std::vector<double>& point) {
              return scalar_identity_residual(spec, point);
          },
          py::arg("spec"), py::arg("point"));

    py::class_<ClassResult>(m, "ClassResult")
        .def_readonly("residual", &ClassResult::residual)
        .def_readonly("scale", &ClassResult::scale)
        .def_property_readonly("verdict",
                               [](const ClassResult& r) { return verdict_name(r.verdict); })
        .def_readonly("note", &ClassResult::note);

    py::class_<GrayClassReport>(m, "GrayClassReport")
        .def_readonly("dim", &GrayClassReport::dim)
        .def_readonly("sample_count", &GrayClassReport::sample_count)
        .def_readonly("atol", &GrayClassReport::atol)
        .def_readonly("rtol", &GrayClassReport::rtol)
        .def_readonly("finest_class", &GrayClassReport::finest_class)
        .def("result", [](const GrayClassReport& r, const std::string& cls) {
            for (GrayClass c : kGrayClasses)
                if (cls == gray_class_name(c)) return r.result(c);
            throw InputError("unknown class '" + cls + "'");
        });

    m.def("classify",
          [](const MetricField& m_, const std::vector<std::vector<double>>& samples, double atol,
             double rtol) { return classify(m_, samples, atol, rtol); },
          py::arg("metric"), py::arg("samples"), py::arg("atol") = 1e-9, py::arg("rtol") = 1e-6);

    m.def("run_report",
          [](const std::string& manifest_json, const std::string& command,
             const std::string& format) {
              const Manifest manifest = parse_manifest(manifest_json);
              const auto cmd = command_from_name(command);
              if (!cmd) throw InputError("unknown command '" + command + "'");
              RunOptions options;
              options.command = *cmd;
              const RunReport report = run_command(manifest, options);
              return py::make_tuple(report.status,
                                    format == "json" ? render_json(report) : render_text(report));
          },
          py::arg("manifest_json"), py::arg("command"), py::arg("format") = "json",
          "Run a manifest command; returns (status, rendered_report)");
}
