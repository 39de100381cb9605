#include "mlsw/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace mlsw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'", line);
  }
}

int to_int(const std::string& s, int line) {
  const double v = to_double(s, line);
  const int i = static_cast<int>(v);
  if (i != v) throw ConfigError("not an integer: '" + s + "'", line);
  return i;
}

bool to_bool(const std::string& s, int line) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("not a boolean: '" + s + "'", line);
}

std::vector<double> to_list(const std::string& s, int line) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(to_double(tok, line));
  return out;
}

// Shortest decimal that round-trips to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const std::set<std::string> kKinds = {
    "simulate",       "rigidlid",   "acoustic",   "eigen",
    "hyperbolicity",  "converge-wp", "converge-ip"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  bool saw_rho = false, saw_rho_list = false;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'section.key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("empty key or value", line);

    if (key == "params.N") c.N = to_int(val, line);
    else if (key == "params.d") c.d = to_int(val, line);
    else if (key == "params.delta") c.delta = to_list(val, line);
    else if (key == "params.r") c.r = to_list(val, line);
    else if (key == "params.rho") {
      c.rhos = {to_double(val, line)};
      saw_rho = true;
    } else if (key == "params.rho_list") {
      c.rhos = to_list(val, line);
      saw_rho_list = true;
    } else if (key == "grid.Lx") c.Lx = to_double(val, line);
    else if (key == "grid.Ly") c.Ly = to_double(val, line);
    else if (key == "grid.nx") c.nx = to_int(val, line);
    else if (key == "grid.ny") c.ny = to_int(val, line);
    else if (key == "solver.cfl") c.solver.cfl = to_double(val, line);
    else if (key == "solver.t_end") c.solver.t_end = to_double(val, line);
    else if (key == "solver.dealias") c.solver.dealias = to_bool(val, line);
    else if (key == "solver.stride") c.solver.stride = to_int(val, line);
    else if (key == "recipe.depth_margin")
      c.recipe.depth_margin = to_double(val, line);
    else if (key == "recipe.shear_nu") c.recipe.shear_nu = to_double(val, line);
    else if (key.rfind("recipe.mode", 0) == 0) {
      const auto parts = split(val, ',');
      if (parts.size() != 6)
        throw ConfigError(
            "recipe mode needs field,layer,mx,my,amplitude,phase", line);
      ModeSpec m;
      m.field = parts[0];
      m.layer = to_int(parts[1], line);
      m.mx = to_int(parts[2], line);
      m.my = to_int(parts[3], line);
      m.amplitude = to_double(parts[4], line);
      m.phase = to_double(parts[5], line);
      if (m.field != "zeta" && m.field != "ux" && m.field != "uy")
        throw ConfigError("mode field must be zeta, ux or uy", line);
      c.recipe.modes.push_back(m);
    } else if (key == "experiment.kind") c.kind = val;
    else if (key == "experiment.n_samples") c.n_samples = to_int(val, line);
    else if (key == "experiment.diag_s") c.diag_s = to_double(val, line);
    else if (key == "experiment.h0") c.hyp_h0 = to_double(val, line);
    else if (key == "experiment.nu") c.hyp_nu = to_double(val, line);
    else if (key == "output.directory") c.out_dir = val;
    else if (key == "output.snapshots") c.write_snapshots = to_bool(val, line);
    else throw ConfigError("unknown key '" + key + "'", line);
  }

  if (c.kind.empty()) throw ConfigError("missing experiment.kind");
  if (!kKinds.count(c.kind))
    throw ConfigError("unknown experiment kind '" + c.kind + "'");

  const bool is_sweep = c.kind == "converge-wp" || c.kind == "converge-ip";
  if (is_sweep) {
    if (c.rhos.size() < 3)
      throw ConfigError("convergence sweeps need a rho_list with >= 3 values");
  } else {
    if (saw_rho_list || c.rhos.size() != 1)
      throw ConfigError("'" + c.kind + "' takes a single params.rho");
  }
  (void)saw_rho;

  // Core constraint validation before any computation; errors carry the
  // derive_params explanation (e.g. the telescoping sum of the r_j).
  for (double rho : c.rhos) {
    try {
      derive_params(c.N, c.d, c.delta, c.r, rho);
    } catch (const ParamError& e) {
      throw ConfigError(e.what());
    }
  }
  if (c.d == 1) {
    for (const ModeSpec& m : c.recipe.modes)
      if (m.field == "uy" || m.my != 0)
        throw ConfigError("d=1 recipes cannot use uy or my != 0");
  }
  if (c.solver.cfl <= 0.0 || c.solver.cfl > 1.0)
    throw ConfigError("solver.cfl must be in (0, 1]");
  if (c.solver.t_end <= 0.0) throw ConfigError("solver.t_end must be positive");
  if (c.solver.stride <= 0) throw ConfigError("solver.stride must be positive");
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + fmt(v[i]);
    return s;
  };
  os << "experiment.kind = " << c.kind << "\n";
  os << "experiment.n_samples = " << c.n_samples << "\n";
  os << "experiment.diag_s = " << fmt(c.diag_s) << "\n";
  os << "experiment.h0 = " << fmt(c.hyp_h0) << "\n";
  os << "experiment.nu = " << fmt(c.hyp_nu) << "\n";
  os << "params.N = " << c.N << "\n";
  os << "params.d = " << c.d << "\n";
  os << "params.delta = " << list(c.delta) << "\n";
  if (!c.r.empty()) os << "params.r = " << list(c.r) << "\n";
  if (c.rhos.size() == 1)
    os << "params.rho = " << fmt(c.rhos[0]) << "\n";
  else
    os << "params.rho_list = " << list(c.rhos) << "\n";
  os << "grid.Lx = " << fmt(c.Lx) << "\n";
  if (c.d == 2) os << "grid.Ly = " << fmt(c.Ly) << "\n";
  os << "grid.nx = " << c.nx << "\n";
  if (c.d == 2) os << "grid.ny = " << c.ny << "\n";
  os << "solver.cfl = " << fmt(c.solver.cfl) << "\n";
  os << "solver.t_end = " << fmt(c.solver.t_end) << "\n";
  os << "solver.dealias = " << (c.solver.dealias ? "true" : "false") << "\n";
  os << "solver.stride = " << c.solver.stride << "\n";
  os << "recipe.depth_margin = " << fmt(c.recipe.depth_margin) << "\n";
  os << "recipe.shear_nu = " << fmt(c.recipe.shear_nu) << "\n";
  for (std::size_t i = 0; i < c.recipe.modes.size(); ++i) {
    const ModeSpec& m = c.recipe.modes[i];
    os << "recipe.mode" << i + 1 << " = " << m.field << "," << m.layer << ","
       << m.mx << "," << m.my << "," << fmt(m.amplitude) << ","
       << fmt(m.phase) << "\n";
  }
  os << "output.directory = " << c.out_dir << "\n";
  os << "output.snapshots = " << (c.write_snapshots ? "true" : "false")
     << "\n";
  return os.str();
}

void write_timeseries(const std::string& path,
                      const std::vector<DiagnosticsRecord>& records) {
  std::ofstream f(path, std::ios::binary);  // binary: forced UNIX newlines
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "time,energy,hs_norm_u,hs_norm_v,min_depth,max_shear,rl_residual,"
       "symm_energy,min_gap,flags\n";
  for (const DiagnosticsRecord& r : records) {
    f << fmt(r.time) << ',' << fmt(r.energy) << ',' << fmt(r.hs_norm_u) << ','
      << fmt(r.hs_norm_v) << ',' << fmt(r.min_depth) << ','
      << fmt(r.max_shear) << ',' << fmt(r.rl_residual) << ','
      << fmt(r.symm_energy) << ',' << fmt(r.min_gap) << ',' << r.flags
      << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

void put_u32(std::ostream& f, std::uint32_t v) {
  f.write(reinterpret_cast<const char*>(&v), 4);
}
void put_f64(std::ostream& f, double v) {
  f.write(reinterpret_cast<const char*>(&v), 8);
}
std::uint32_t get_u32(std::istream& f) {
  std::uint32_t v = 0;
  f.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& f) {
  double v = 0;
  f.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Params& p, const Grid& g,
                    const StateU& u, double t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write("MLSV1", 5);
  put_u32(f, static_cast<std::uint32_t>(p.N));
  put_u32(f, static_cast<std::uint32_t>(p.d));
  put_u32(f, static_cast<std::uint32_t>(g.nx));
  put_u32(f, static_cast<std::uint32_t>(g.ny));
  put_f64(f, g.Lx);
  put_f64(f, g.Ly);
  put_f64(f, p.rho);
  put_f64(f, t);
  auto put_field = [&f](const Field& x) {
    f.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(8 * x.size()));
  };
  put_field(u.scaled_zeta1);
  for (const Field& z : u.zeta) put_field(z);
  for (const Field& x : u.ux) put_field(x);
  for (const Field& y : u.uy) put_field(y);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  char magic[5];
  f.read(magic, 5);
  if (!f || std::memcmp(magic, "MLSV1", 5) != 0)
    throw std::runtime_error("bad snapshot magic in " + path);
  Snapshot s;
  s.N = static_cast<int>(get_u32(f));
  s.d = static_cast<int>(get_u32(f));
  s.nx = static_cast<int>(get_u32(f));
  s.ny = static_cast<int>(get_u32(f));
  s.Lx = get_f64(f);
  s.Ly = get_f64(f);
  s.rho = get_f64(f);
  s.t = get_f64(f);
  if (!f || s.N < 1 || s.d < 1 || s.d > 2 || s.nx < 1 || s.ny < 1)
    throw std::runtime_error("corrupt snapshot header in " + path);
  const std::size_t npts = static_cast<std::size_t>(s.nx) * s.ny;
  auto get_field = [&]() {
    Field x(npts);
    f.read(reinterpret_cast<char*>(x.data()),
           static_cast<std::streamsize>(8 * npts));
    return x;
  };
  s.state.scaled_zeta1 = get_field();
  for (int n = 2; n <= s.N; ++n) s.state.zeta.push_back(get_field());
  for (int n = 1; n <= s.N; ++n) s.state.ux.push_back(get_field());
  if (s.d == 2)
    for (int n = 1; n <= s.N; ++n) s.state.uy.push_back(get_field());
  if (!f) throw std::runtime_error("truncated snapshot " + path);
  return s;
}

void write_report(const std::string& path, const ConvergenceReport& rep) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "# " << rep.config_digest << "\n";
  f << "rho,error,error_zeta,error_vel,prep_ratio_zeta,prep_ratio_flux,"
       "aborted\n";
  for (const SweepMember& m : rep.members) {
    f << fmt(m.rho) << ',' << fmt(m.error) << ',' << fmt(m.error_zeta) << ','
      << fmt(m.error_vel) << ',' << fmt(m.prep_ratio_zeta) << ','
      << fmt(m.prep_ratio_flux) << ',' << (m.aborted ? 1 : 0) << '\n';
  }
  if (rep.fit) {
    f << "# slope = " << fmt(rep.fit->slope)
      << " +- " << fmt(rep.fit->width)
      << " (n = " << rep.fit->n_used << ")\n";
  }
  f << "# errors_decreasing = " << (rep.errors_decreasing ? "true" : "false")
    << "\n";
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace mlsw
