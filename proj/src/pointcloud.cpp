#include "hypam/pointcloud.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "hypam/error.hpp"

namespace hypam {

namespace {

void put_le(std::ofstream& out, double v) {
    static_assert(std::endian::native == std::endian::little, "pack for little-endian output");
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_le(std::ofstream& out, std::int32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

} // namespace

void write_ply(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InputError, "cannot open " + path);
    bool tagged = cloud.piece.size() == cloud.points.size() && !cloud.points.empty();
    out << "ply\nformat binary_little_endian 1.0\n";
    if (!cloud.generator.empty()) out << "comment " << cloud.generator << "\n";
    out << "element vertex " << cloud.points.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (tagged) out << "property int piece\n";
    out << "end_header\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        put_le(out, p.v[0]);
        put_le(out, p.v[1]);
        put_le(out, p.v[2]);
        if (tagged) put_le(out, static_cast<std::int32_t>(cloud.piece[i]));
    }
}

void write_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InputError, "cannot open " + path);
    bool tagged = cloud.piece.size() == cloud.points.size() && !cloud.points.empty();
    out << (tagged ? "x,y,z,piece\n" : "x,y,z\n");
    out.precision(17);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        out << p.v[0] << ',' << p.v[1] << ',' << p.v[2];
        if (tagged) out << ',' << cloud.piece[i];
        out << '\n';
    }
}

} // namespace hypam
