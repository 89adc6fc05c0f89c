#ifndef COPE_SVG_HPP
#define COPE_SVG_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cope/cope_matrix.hpp"
#include "cope/enmf.hpp"
#include "cope/nnr.hpp"

namespace cope {

using PlanePolygon = std::vector<std::array<double, 2>>;

/// Closed-path SVG of nested plane polygons: outer black, inner green,
/// witness red. Byte-deterministic for fixed input.
std::string render_nested_svg(const PlanePolygon& outer, const PlanePolygon& inner,
                              const std::optional<PlanePolygon>& witness);

/// Renders the 2-D geometry of a rank-3 experiment: inner and outer bodies of
/// the rank factorization plus the minimal nested polygon witness.
template <class S>
std::string render_rank3(const CopeMatrix<S>& c) {
    if (rank(c.data) != 3)
        throw DomainError("rendering requires a rank-3 input (two-dimensional geometry)");
    FactorGeometry<S> geo = factor_geometry(c);
    AffineChart<S> chart = make_span_chart(geo.outer.vertices);
    if (chart.local_dim() != 2) throw DomainError("outer polytope is not two-dimensional");

    auto flatten = [&](const Matrix<S>& pts) {
        std::vector<std::vector<S>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<S> v;
        v.dim = 2;
        v.vertices = Matrix<S>::from_columns(loc);
        auto ordered = poly_detail::ccw_vertices(make_vpolytope(v.vertices));
        PlanePolygon out;
        for (const auto& p : ordered) out.push_back({p[0].to_double(), p[1].to_double()});
        return out;
    };
    PlanePolygon outer2d = flatten(geo.outer.vertices);
    PlanePolygon inner2d = flatten(geo.inner.vertices);

    std::optional<PlanePolygon> witness;
    auto to2d = [&](const Matrix<S>& pts) {
        std::vector<std::vector<S>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<S> v;
        v.dim = 2;
        v.vertices = Matrix<S>::from_columns(loc);
        return v;
    };
    NestedPolygonResult<S> nested = min_nested_polygon_2d(to2d(geo.inner.vertices), to2d(geo.outer.vertices));
    PlanePolygon w;
    for (std::size_t j = 0; j < nested.polygon.count(); ++j) {
        auto p = nested.polygon.vertex(j);
        w.push_back({p[0].to_double(), p[1].to_double()});
    }
    witness = std::move(w);
    return render_nested_svg(outer2d, inner2d, witness);
}

} // namespace cope

#endif
