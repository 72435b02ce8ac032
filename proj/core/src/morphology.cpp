#include "robustcut/morphology.hpp"

#include "robustcut/errors.hpp"

namespace robustcut {

namespace {

void check(const CellMask& mask, const BallNeighborhoods& balls) {
    if (mask.size() != balls.cell_count()) throw InputError("mask does not match stencil grid");
}

}  // namespace

CellMask dilate(const CellMask& mask, const BallNeighborhoods& balls) {
    check(mask, balls);
    CellMask out(mask.geometry(), false);
    for (std::size_t x = 0; x < mask.size(); ++x) {
        for (auto y : balls.ball(x)) {
            if (mask[y]) {
                out.set(x, true);
                break;
            }
        }
    }
    return out;
}

CellMask erode(const CellMask& mask, const BallNeighborhoods& balls) {
    check(mask, balls);
    CellMask out(mask.geometry(), true);
    for (std::size_t x = 0; x < mask.size(); ++x) {
        for (auto y : balls.ball(x)) {
            if (!mask[y]) {
                out.set(x, false);
                break;
            }
        }
    }
    return out;
}

CellMask dilate(const CellMask& mask, const BallStencil& stencil) {
    return dilate(mask, BallNeighborhoods(mask.geometry(), stencil));
}

CellMask erode(const CellMask& mask, const BallStencil& stencil) {
    return erode(mask, BallNeighborhoods(mask.geometry(), stencil));
}

CellMask opening(const CellMask& mask, const BallStencil& stencil) {
    const BallNeighborhoods balls(mask.geometry(), stencil);
    return dilate(erode(mask, balls), balls);
}

CellMask closing(const CellMask& mask, const BallStencil& stencil) {
    const BallNeighborhoods balls(mask.geometry(), stencil);
    return erode(dilate(mask, balls), balls);
}

BallUnionClassifier dilate_ball_union(const BallUnionClassifier& a, double epsilon) {
    if (!(epsilon >= 0.0)) throw InputError("dilation radius must be >= 0");
    BallUnionClassifier out = a;
    for (double& r : out.radii) r += epsilon;
    return out;
}

CellMask rasterize(const BallUnionClassifier& a, const GridGeometry& geometry) {
    if (a.size() > 0 && a.dim != geometry.dim()) throw InputError("classifier dimension does not match grid");
    CellMask out(geometry, false);
    for (std::size_t x = 0; x < geometry.cell_count(); ++x) {
        const auto c = geometry.center(x);
        out.set(x, a.contains({c.data(), geometry.dim()}));
    }
    return out;
}

}  // namespace robustcut
