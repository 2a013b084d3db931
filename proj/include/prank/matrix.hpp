#pragma once

#include <prank/ff.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace prank {

using ff::Field;
using ff::FieldElement;

/// Small dense matrix over a finite field, row-major.
class Matrix {
public:
    Matrix(const Field& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const FieldElement& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    FieldElement& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!e.is_zero()) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        if (field_ != o.field_) throw std::invalid_argument("matrix field mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    /// Entrywise a -> a^(p^k).
    Matrix frobenius_twist(unsigned k) const {
        Matrix r = *this;
        for (auto& e : r.data_) e = ff::frobenius_power(e, k);
        return r;
    }

    /// Rank by Gaussian elimination over the exact field.
    std::size_t rank() const {
        Matrix m = *this;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && m.at(piv, c).is_zero()) ++piv;
            if (piv == rows_) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
            const FieldElement inv = m.at(r, c).inverse();
            for (std::size_t i = r + 1; i < rows_; ++i) {
                if (m.at(i, c).is_zero()) continue;
                const FieldElement factor = m.at(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= factor * m.at(r, j);
            }
            ++r;
        }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldElement> data_;
};

}  // namespace prank
