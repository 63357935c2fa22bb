#include "nlspread/grid.hpp"

#include <cmath>

namespace nlspread {

Grid Grid::symmetric(double halfwidth, double dx) {
    if (!(dx > 0.0)) throw DomainError("grid requires dx > 0");
    if (!(halfwidth > 0.0)) throw DomainError("grid requires halfwidth > 0");
    const int m = static_cast<int>(std::ceil(halfwidth / dx - 1e-12));
    Grid g;
    g.dx = dx;
    g.n = 2 * m + 1;
    g.x0 = -static_cast<double>(m) * dx;
    return g;
}

}  // namespace nlspread
