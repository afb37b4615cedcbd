#pragma once

#include <string>

#include "wslab/field.hpp"

namespace wslab {

// On-disk snapshot: <stem>.bin holds little-endian f64 payload (row-major;
// complex interleaved re,im; vectors component-major), <stem>.json holds the
// metadata sidecar. Round-trips are bit-exact.
void save_snapshot(const std::string& stem, const ComplexField& f, double t);
void save_snapshot(const std::string& stem, const RealField& f, double t);
void save_snapshot(const std::string& stem, const VectorField& f, double t);

struct SnapshotInfo {
    int n_per_dim;
    double half_length;
    double t;
    std::string kind;  // "complex" | "real" | "vector3"
};

SnapshotInfo read_snapshot_info(const std::string& stem);
ComplexField load_complex_snapshot(const std::string& stem, double* t_out = nullptr);
RealField load_real_snapshot(const std::string& stem, double* t_out = nullptr);
VectorField load_vector_snapshot(const std::string& stem, double* t_out = nullptr);

}  // namespace wslab
