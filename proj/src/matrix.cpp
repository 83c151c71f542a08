#include "qflag/matrix.hpp"

namespace qflag {

GMatrix evaluate(const SMatrix& m, const mpq_class& q0) {
    GMatrix out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(q0);
    return out;
}

}  // namespace qflag
