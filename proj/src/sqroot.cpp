#include "nil2kit/sqroot.hpp"

#include <sstream>

namespace nil2kit {

bool has_nilpotent_square_root(const Partition& p) {
    const auto& parts = p.parts();
    for (std::size_t i = 0; i < parts.size(); i += 2) {
        const int next = i + 1 < parts.size() ? parts[i + 1] : 0;
        if (parts[i] - next > 1) return false;
    }
    return true;
}

Matrix perfect_shuffle(std::size_t m, Backend b) {
    std::vector<std::vector<long>> rows(m, std::vector<long>(m, 0));
    std::size_t col = 0;
    for (std::size_t i = 0; i < m; i += 2) rows[i][col++] = 1;
    for (std::size_t i = 1; i < m; i += 2) rows[i][col++] = 1;
    Matrix p = Matrix::from_ints(rows);
    return b == Backend::exact ? p : to_float(p);
}

SqrtCertificate nilpotent_square_root(const Matrix& j, const ToleranceConfig& cfg) {
    if (!j.is_square()) throw DimensionMismatch("nilpotent_square_root: matrix must be square");
    const std::size_t n = j.rows();
    const Backend be = j.backend();
    if (n == 0 || j.is_zero()) {
        return {Matrix::zeros(n, n, be), Matrix::identity(n, be), "zero matrix: q = 0"};
    }
    const JordanBasis jb = jordan_basis(j, cfg);
    if (jb.spectrum.entries.size() != 1 || !(jb.spectrum.entries[0].eigenvalue.is_exact()
                                                 ? jb.spectrum.entries[0].eigenvalue.is_zero()
                                                 : std::abs(jb.spectrum.entries[0].eigenvalue.value()) <=
                                                       cfg.eig_cluster_tol)) {
        throw PreconditionViolation("nilpotent_square_root: input is not nilpotent");
    }
    const Partition& p = jb.spectrum.entries[0].partition;
    if (!has_nilpotent_square_root(p)) {
        throw PreconditionViolation("nilpotent_square_root: partition " + p.to_string() +
                                    " admits no nilpotent square root");
    }

    std::vector<Matrix> cells, shuffles;
    std::ostringstream note;
    note << "shuffle square root from cells";
    const auto& parts = p.parts();
    for (std::size_t i = 0; i < parts.size(); i += 2) {
        const std::size_t m = static_cast<std::size_t>(parts[i]) + (i + 1 < parts.size() ? parts[i + 1] : 0);
        cells.push_back(Matrix::jordan_cell(m, be));
        shuffles.push_back(perfect_shuffle(m, be));
        note << " J" << m;
    }
    // pi⁻¹ q0² pi = canonical and s_j⁻¹ j s_j = canonical, so s = pi s_j⁻¹.
    const Matrix q0 = direct_sum(cells);
    const Matrix pi = direct_sum(shuffles);
    return {q0, pi * inverse(jb.s, cfg), note.str()};
}

}  // namespace nil2kit
