#pragma once

#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"

namespace robustcut {

// Grid morphology with the clipped open-ball stencil. Erosion is defined
// through the complement identity A^{-eps} = ((A^c)^eps)^c, i.e. a cell
// survives iff every in-domain cell of its ball lies in A.

CellMask dilate(const CellMask& mask, const BallStencil& stencil);
CellMask erode(const CellMask& mask, const BallStencil& stencil);
/// dilate(erode(A))
CellMask opening(const CellMask& mask, const BallStencil& stencil);
/// erode(dilate(A))
CellMask closing(const CellMask& mask, const BallStencil& stencil);

CellMask dilate(const CellMask& mask, const BallNeighborhoods& balls);
CellMask erode(const CellMask& mask, const BallNeighborhoods& balls);

/// Radii grow by eps. Exact for open balls of a norm.
BallUnionClassifier dilate_ball_union(const BallUnionClassifier& a, double epsilon);

/// Cells whose centre lies in A.
CellMask rasterize(const BallUnionClassifier& a, const GridGeometry& geometry);

}  // namespace robustcut
