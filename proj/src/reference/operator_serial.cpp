#include <stdexcept>

#include "../detail.hpp"

namespace rosenau::reference {

BlockTridiagonalMatrix assemble_B(const DGSpace& space, const PenaltyParams& penalty,
                                  double epsilon) {
  penalty.validate();
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("assemble_B: epsilon must be positive");
  }
  const std::size_t nl = space.n_local();
  const std::size_t n_el = space.n_elements();
  const std::vector<double> gram =
      reference_second_derivative_gram(space.degree(), space.normalization());
  BlockTridiagonalMatrix out(n_el, nl);

  for (std::size_t e = 0; e < n_el; ++e) {
    const double h = space.mesh().length(e);
    const double volume = epsilon * 8.0 / (h * h * h);
    auto d = out.diag(e);
    for (std::size_t i = 0; i < nl * nl; ++i) {
      d[i] += volume * gram[i];
    }
  }

  // Scatter every node into the (up to) four blocks it couples.
  for (std::size_t n = 0; n <= n_el; ++n) {
    const NodeStencil s = node_stencil(space, n);
    for (int row = 0; row < 2; ++row) {
      if (!s.present[row]) {
        continue;
      }
      for (int col = 0; col < 2; ++col) {
        if (!s.present[col]) {
          continue;
        }
        const std::size_t er = s.element[row];
        const std::size_t ec = s.element[col];
        std::span<double> block = er == ec ? out.diag(er)
                                  : ec < er ? out.lower(er)
                                            : out.upper(er);
        detail::add_node_block(s, row, col, epsilon, &penalty, block);
      }
    }
  }
  return out;
}

} // namespace rosenau::reference
