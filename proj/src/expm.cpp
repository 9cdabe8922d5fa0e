#include "pmre/expm.hpp"

#include <cmath>

namespace pmre {

Mat matrix_exponential(const Mat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("matrix_exponential: matrix must be square");
    if (!a.allFinite())
        throw std::invalid_argument("matrix_exponential: non-finite entries");

    const auto n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

    int squarings = 0;
    if (norm1 > 0.25) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
    }
    const Mat b = a / std::pow(2.0, squarings);

    Mat result = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    for (int k = 1; k <= 64; ++k) {
        term = (term * b) / static_cast<double>(k);
        result += term;
        const double tn = term.cwiseAbs().maxCoeff();
        if (tn < 1e-17 * result.cwiseAbs().maxCoeff()) break;
    }

    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

} // namespace pmre
