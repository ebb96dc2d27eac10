#include "hartmann/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace hartmann {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "snapshot payloads are written little-endian");

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_snapshot(const std::string& path, const State& s, const Params& p) {
    std::vector<std::string> names{"w", "u", "v"};
    std::vector<const Field*> fields{&s.w, &s.u, &s.v};
    if (s.has_b) {
        names.push_back("b");
        fields.push_back(&s.b);
    }
    json header = {
        {"t", s.t},
        {"grid", {{"nx", s.grid().nx}, {"ny", s.grid().ny},
                  {"y_max", s.grid().y_max}, {"x_length", s.grid().x_length}}},
        {"params", {{"s", p.s}, {"gamma", p.gamma}, {"sigma", p.sigma},
                    {"delta", p.delta}, {"eps", p.eps}}},
        {"fields", names},
        {"byte_order", "little"},
        {"layout", "row-x-major"},
        {"scalar", "float64"},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open snapshot for writing: " + path);
    out << header.dump() << '\n';
    for (const Field* f : fields)
        out.write(reinterpret_cast<const char*>(f->data().data()),
                  static_cast<std::streamsize>(f->data().size() * sizeof(double)));
    if (!out) throw IoError("snapshot write failed: " + path);
}

SnapshotData read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("snapshot missing header: " + path);
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw IoError("snapshot header is not valid JSON: " + std::string(e.what()));
    }
    SnapshotData snap;
    snap.t = header.at("t").get<double>();
    snap.grid.nx = header.at("grid").at("nx").get<int>();
    snap.grid.ny = header.at("grid").at("ny").get<int>();
    snap.grid.y_max = header.at("grid").at("y_max").get<double>();
    snap.grid.x_length = header.at("grid").at("x_length").get<double>();
    snap.field_names = header.at("fields").get<std::vector<std::string>>();
    for (const std::string& name : snap.field_names) {
        Field f(snap.grid);
        in.read(reinterpret_cast<char*>(f.data().data()),
                static_cast<std::streamsize>(f.data().size() * sizeof(double)));
        if (!in) throw IoError("snapshot payload truncated: " + path);
        snap.fields.emplace(name, std::move(f));
    }
    return snap;
}

void write_diagnostics_csv(const std::string& path, const DiagnosedRun& run) {
    std::ofstream out(path, std::ios::binary); // binary: byte-stable newlines
    if (!out) throw IoError("cannot open CSV for writing: " + path);
    const RunConstants& c = run.constants;
    out << "# E0=" << format_double(c.E0)
        << " C_energy=" << format_double(c.C_energy)
        << " blowup_time=" << format_double(c.blowup_time)
        << " C_env_upper=" << format_double(c.C_env_upper)
        << " C_env_lower=" << format_double(c.C_env_lower) << "\n";
    out << "t,h_s_gamma,h_s_gamma_g,u_minus_U,sigma_floor,I_sup,energy_rate,F,"
           "apriori_bound,envelope_upper,envelope_lower,G,W,"
           "boundary_resid_1,boundary_resid_3,stop_reason\n";
    for (size_t i = 0; i < run.records.size(); ++i) {
        const DiagnosticsRecord& r = run.records[i];
        out << format_double(r.t) << ','
            << format_double(r.norms.h_s_gamma) << ','
            << format_double(r.norms.h_s_gamma_g) << ','
            << format_double(r.norms.u_minus_U) << ','
            << format_double(r.norms.sigma_floor) << ','
            << format_double(r.norms.i_sup) << ','
            << format_double(r.energy_rate) << ','
            << format_double(r.F_value) << ','
            << format_double(r.apriori_bound) << ','
            << format_double(r.envelope_upper) << ','
            << format_double(r.envelope_lower) << ','
            << format_double(r.G) << ','
            << format_double(r.W) << ','
            << format_double(r.boundary_resid_1) << ','
            << format_double(r.boundary_resid_3) << ',';
        if (i + 1 == run.records.size()) out << to_string(run.series.reason);
        out << "\n";
    }
    if (!out) throw IoError("CSV write failed: " + path);
}

} // namespace hartmann
