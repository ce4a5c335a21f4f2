#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mfsb::detail {

// Chebyshev (first kind) collocation grid mapped to [0,1], ascending, with
// barycentric weights. First-kind points exclude the endpoints, which keeps
// all branch images 1/(n+x) strictly inside (0,1).
struct ChebGrid {
    std::vector<double> x; // nodes, ascending in (0,1)
    std::vector<double> w; // barycentric weights

    explicit ChebGrid(std::size_t m) {
        if (m < 2) throw std::invalid_argument("ChebGrid: need at least 2 nodes");
        x.resize(m);
        w.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double ang = (2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi /
                               (2.0 * static_cast<double>(m));
            // descending in i; store ascending
            x[m - 1 - i] = 0.5 * (1.0 + std::cos(ang));
            w[m - 1 - i] = ((i % 2 == 0) ? 1.0 : -1.0) * std::sin(ang);
        }
    }

    std::size_t size() const { return x.size(); }

    // Lagrange cardinal values l_j(p) for all j (barycentric form).
    std::vector<double> cardinal_row(double p) const {
        const std::size_t m = x.size();
        std::vector<double> row(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (p == x[j]) {
                row[j] = 1.0;
                return row;
            }
        }
        double denom = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = w[j] / (p - x[j]);
            denom += row[j];
        }
        for (std::size_t j = 0; j < m; ++j) row[j] /= denom;
        return row;
    }

    double interpolate(const std::vector<double>& values, double p) const {
        const std::size_t m = x.size();
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (p == x[j]) return values[j];
            const double c = w[j] / (p - x[j]);
            num += c * values[j];
            den += c;
        }
        return num / den;
    }

    // Row matrix A (rows j = 0..taylor_terms-1) with A[j] . values = j-th
    // Taylor coefficient at 0 of the degree-(m-1) interpolant. Built through
    // Chebyshev coefficients: values -> Chebyshev series -> monomials at 0.
    // Truncating the monomial expansion at taylor_terms is exact for the
    // extracted coefficients.
    std::vector<std::vector<double>> taylor_at_zero_matrix(std::size_t taylor_terms) const {
        const std::size_t m = x.size();
        // cheb_from_values[k][i]: c_k = (2 - delta_k0)/m * sum_i v_i cos(k theta_i)
        // with theta_i the first-kind angles of node i (ascending x order).
        std::vector<std::vector<double>> cfv(m, std::vector<double>(m, 0.0));
        for (std::size_t k = 0; k < m; ++k) {
            const double scale = (k == 0 ? 1.0 : 2.0) / static_cast<double>(m);
            for (std::size_t i = 0; i < m; ++i) {
                // node i ascending corresponds to angle index m-1-i
                const double ang = (2.0 * static_cast<double>(m - 1 - i) + 1.0) * std::numbers::pi /
                                   (2.0 * static_cast<double>(m));
                cfv[k][i] = scale * std::cos(static_cast<double>(k) * ang);
            }
        }
        // Monomial (first taylor_terms) coefficients of T_k(2u - 1).
        std::vector<std::vector<double>> mono(m, std::vector<double>(taylor_terms, 0.0));
        if (m >= 1) mono[0][0] = 1.0;
        if (m >= 2) {
            mono[1][0] = -1.0;
            if (taylor_terms > 1) mono[1][1] = 2.0;
        }
        for (std::size_t k = 2; k < m; ++k) {
            for (std::size_t t = 0; t < taylor_terms; ++t) {
                double v = -2.0 * mono[k - 1][t] - mono[k - 2][t];
                if (t > 0) v += 4.0 * mono[k - 1][t - 1];
                mono[k][t] = v;
            }
        }
        std::vector<std::vector<double>> out(taylor_terms, std::vector<double>(m, 0.0));
        for (std::size_t t = 0; t < taylor_terms; ++t) {
            for (std::size_t i = 0; i < m; ++i) {
                double acc = 0.0;
                for (std::size_t k = 0; k < m; ++k) acc += mono[k][t] * cfv[k][i];
                out[t][i] = acc;
            }
        }
        return out;
    }
};

} // namespace mfsb::detail
