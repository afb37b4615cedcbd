#include "wslab/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace wslab {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot payloads are little-endian; big-endian hosts need byte swaps");

void write_sidecar(const std::string& stem, const SpectralGrid& grid, double t,
                   const char* kind) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n_per_dim"] = grid.n();
    j["half_length"] = grid.half_length();
    j["t"] = t;
    j["kind"] = kind;
    j["byte_order"] = "little";
    j["element"] = "f64";
    std::ofstream out(stem + ".json");
    if (!out) throw DataError("cannot write snapshot sidecar: " + stem);
    out << j.dump(2) << "\n";
}

void write_payload(const std::string& stem, const void* data, std::size_t bytes) {
    std::ofstream out(stem + ".bin", std::ios::binary);
    if (!out) throw DataError("cannot write snapshot payload: " + stem);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
}

std::vector<char> read_payload(const std::string& stem, std::size_t expect_bytes) {
    std::ifstream in(stem + ".bin", std::ios::binary | std::ios::ate);
    if (!in) throw DataError("cannot read snapshot payload: " + stem);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != expect_bytes) throw DataError("snapshot payload size mismatch: " + stem);
    std::vector<char> buf(bytes);
    in.seekg(0);
    in.read(buf.data(), static_cast<std::streamsize>(bytes));
    return buf;
}

nlohmann::json read_sidecar(const std::string& stem) {
    std::ifstream in(stem + ".json");
    if (!in) throw DataError("cannot read snapshot sidecar: " + stem);
    nlohmann::json j;
    in >> j;
    if (j.value("schema_version", 0) != 1) throw DataError("unsupported snapshot schema");
    if (j.value("byte_order", "") != "little" || j.value("element", "") != "f64")
        throw DataError("unsupported snapshot encoding");
    return j;
}

}  // namespace

void save_snapshot(const std::string& stem, const ComplexField& f, double t) {
    write_sidecar(stem, f.grid(), t, "complex");
    write_payload(stem, f.data(), f.size() * sizeof(complexd));
}

void save_snapshot(const std::string& stem, const RealField& f, double t) {
    write_sidecar(stem, f.grid(), t, "real");
    write_payload(stem, f.data(), f.size() * sizeof(double));
}

void save_snapshot(const std::string& stem, const VectorField& f, double t) {
    write_sidecar(stem, f.grid(), t, "vector3");
    write_payload(stem, f.data(), 3 * f.size() * sizeof(double));
}

SnapshotInfo read_snapshot_info(const std::string& stem) {
    auto j = read_sidecar(stem);
    return {j.at("n_per_dim").get<int>(), j.at("half_length").get<double>(),
            j.at("t").get<double>(), j.at("kind").get<std::string>()};
}

ComplexField load_complex_snapshot(const std::string& stem, double* t_out) {
    auto info = read_snapshot_info(stem);
    if (info.kind != "complex") throw DataError("snapshot kind mismatch: " + stem);
    SpectralGrid grid(info.n_per_dim, info.half_length);
    ComplexField f(grid);
    auto buf = read_payload(stem, f.size() * sizeof(complexd));
    std::memcpy(f.data(), buf.data(), buf.size());
    if (t_out) *t_out = info.t;
    return f;
}

RealField load_real_snapshot(const std::string& stem, double* t_out) {
    auto info = read_snapshot_info(stem);
    if (info.kind != "real") throw DataError("snapshot kind mismatch: " + stem);
    SpectralGrid grid(info.n_per_dim, info.half_length);
    RealField f(grid);
    auto buf = read_payload(stem, f.size() * sizeof(double));
    std::memcpy(f.data(), buf.data(), buf.size());
    if (t_out) *t_out = info.t;
    return f;
}

VectorField load_vector_snapshot(const std::string& stem, double* t_out) {
    auto info = read_snapshot_info(stem);
    if (info.kind != "vector3") throw DataError("snapshot kind mismatch: " + stem);
    SpectralGrid grid(info.n_per_dim, info.half_length);
    VectorField f(grid);
    auto buf = read_payload(stem, 3 * f.size() * sizeof(double));
    std::memcpy(f.data(), buf.data(), buf.size());
    if (t_out) *t_out = info.t;
    return f;
}

}  // namespace wslab
