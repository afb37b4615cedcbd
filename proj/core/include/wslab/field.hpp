#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wslab/grid.hpp"

namespace wslab {

// Complex scalar samples on a SpectralGrid, physical space, row-major.
class ComplexField {
  public:
    explicit ComplexField(const SpectralGrid& grid, complexd fill = {0.0, 0.0})
        : grid_(grid), data_(grid.size(), fill) {}

    const SpectralGrid& grid() const { return grid_; }
    std::size_t size() const { return data_.size(); }
    complexd* data() { return data_.data(); }
    const complexd* data() const { return data_.data(); }
    complexd& operator[](std::size_t i) { return data_[i]; }
    const complexd& operator[](std::size_t i) const { return data_[i]; }

    ComplexField& operator+=(const ComplexField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexField& operator-=(const ComplexField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexField& operator*=(complexd z) {
        for (auto& v : data_) v *= z;
        return *this;
    }

    double norm_l2() const {  // continuum-normalized: sqrt(h^3 sum |f|^2)
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s * grid_.cell_volume());
    }
    double norm_sup() const {
        double s = 0.0;
        for (const auto& v : data_) s = std::max(s, std::abs(v));
        return s;
    }

  private:
    SpectralGrid grid_;
    std::vector<complexd> data_;
};

// Real scalar samples on a SpectralGrid.
class RealField {
  public:
    explicit RealField(const SpectralGrid& grid, double fill = 0.0)
        : grid_(grid), data_(grid.size(), fill) {}

    const SpectralGrid& grid() const { return grid_; }
    std::size_t size() const { return data_.size(); }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](std::size_t i) { return data_[i]; }
    const double& operator[](std::size_t i) const { return data_[i]; }

    RealField& operator+=(const RealField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    RealField& operator-=(const RealField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    RealField& operator*=(double a) {
        for (auto& v : data_) v *= a;
        return *this;
    }

    double norm_l2() const {
        double s = 0.0;
        for (const auto& v : data_) s += v * v;
        return std::sqrt(s * grid_.cell_volume());
    }
    double norm_sup() const {
        double s = 0.0;
        for (const auto& v : data_) s = std::max(s, std::abs(v));
        return s;
    }

  private:
    SpectralGrid grid_;
    std::vector<double> data_;
};

// Real three-component field, component-major (all of component 0, then 1, 2).
class VectorField {
  public:
    explicit VectorField(const SpectralGrid& grid, double fill = 0.0)
        : grid_(grid), data_(3 * grid.size(), fill) {}

    const SpectralGrid& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }
    double* component(int c) { return data_.data() + static_cast<std::size_t>(c) * grid_.size(); }
    const double* component(int c) const {
        return data_.data() + static_cast<std::size_t>(c) * grid_.size();
    }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    VectorField& operator+=(const VectorField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        require_same_grid(grid_, o.grid_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    VectorField& operator*=(double a) {
        for (auto& v : data_) v *= a;
        return *this;
    }

    double norm_l2() const {
        double s = 0.0;
        for (const auto& v : data_) s += v * v;
        return std::sqrt(s * grid_.cell_volume());
    }
    double norm_sup() const {  // pointwise Euclidean magnitude
        double s = 0.0;
        const std::size_t m = grid_.size();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = data_[i], b = data_[i + m], c = data_[i + 2 * m];
            s = std::max(s, a * a + b * b + c * c);
        }
        return std::sqrt(s);
    }

  private:
    SpectralGrid grid_;
    std::vector<double> data_;
};

}  // namespace wslab
