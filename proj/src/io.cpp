#include "dhub/io.hpp"

#include "json.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dhub {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string generator() { return std::string("dicke-hubbard-solver v") + kVersion; }

std::string json_text(json doc, const std::string& config_hash) {
  doc["generator"] = generator();
  doc["config_hash"] = config_hash;
  return header_line(config_hash) + doc.dump(1) + "\n";
}

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw InvalidParameter("format", "expected 'csv' or 'json', got '" + name + "'");
}

std::string hash_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string canonical(const ModelParams& p) {
  std::ostringstream os;
  os << "epsilon=" << exact(p.epsilon) << ";omega0=" << exact(p.omega0) << ";lambda=" << exact(p.lambda)
     << ";kappa=" << exact(p.kappa) << ";z=" << p.z << ";nqubits=" << p.n_qubits << ";ntrunc=" << p.n_trunc
     << ";mode=" << to_string(p.coupling_form) << ";tol=" << exact(p.tol_rel)
     << ";psi_scan_max=" << exact(p.psi_scan_max) << ";psi_scan_points=" << p.psi_scan_points
     << ";mixing=" << exact(p.mixing) << ";max_iters=" << p.max_iters;
  return os.str();
}

std::string canonical(const SweepConfig& c) {
  std::ostringstream os;
  os << canonical(c.base) << ";lambdas=";
  for (double v : c.lambdas) os << exact(v) << ',';
  os << ";" << to_string(c.axis2) << "=";
  for (double v : c.axis2_values) os << exact(v) << ',';
  os << ";warm=" << c.warm_start;
  return os.str();
}

std::string header_line(const std::string& config_hash) {
  return "# " + generator() + " config-hash=" + config_hash + "\n";
}

std::string render(const SweepGrid& grid, Format format, const std::string& config_hash) {
  if (format == Format::Csv) {
    std::string out = header_line(config_hash);
    out += "lambda,kappa,N,energy,psi,psi_rescaled,photon_number,converged,iterations\n";
    for (const SweepCell& c : grid.cells) {
      out += num(c.lambda) + ',' + num(c.kappa) + ',' + std::to_string(c.n_qubits) + ',' + num(c.energy) +
             ',' + num(c.psi) + ',' + num(c.psi_rescaled) + ',' + num(c.photon_number) + ',' +
             (c.converged ? "1" : "0") + ',' + std::to_string(c.iterations) + '\n';
    }
    return out;
  }
  json doc;
  doc["axis1"] = {{"name", grid.axis1_name}, {"values", grid.axis1}};
  doc["axis2"] = {{"name", grid.axis2_name}, {"values", grid.axis2}};
  json cells = json::array();
  for (const SweepCell& c : grid.cells) {
    cells.push_back({{"lambda", c.lambda},
                     {"kappa", c.kappa},
                     {"N", c.n_qubits},
                     {"energy", c.energy},
                     {"psi", c.psi},
                     {"psi_rescaled", c.psi_rescaled},
                     {"photon_number", c.photon_number},
                     {"converged", c.converged},
                     {"iterations", c.iterations}});
  }
  doc["cells"] = std::move(cells);
  return json_text(std::move(doc), config_hash);
}

std::string render(const BoundaryCurve& curve, Format format, const std::string& config_hash) {
  if (format == Format::Csv) {
    std::string out = header_line(config_hash) + "kappa,lambda_c_numeric,lambda_c_analytic\n";
    for (std::size_t i = 0; i < curve.kappa.size(); ++i) {
      out += num(curve.kappa[i]) + ',' + opt(curve.lambda_c_numeric[i]) + ',' +
             opt(curve.lambda_c_analytic[i]) + '\n';
    }
    return out;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < curve.kappa.size(); ++i) {
    rows.push_back({{"kappa", curve.kappa[i]},
                    {"lambda_c_numeric", opt_json(curve.lambda_c_numeric[i])},
                    {"lambda_c_analytic", opt_json(curve.lambda_c_analytic[i])}});
  }
  return json_text({{"boundary", rows}}, config_hash);
}

std::string render(const FsCurve& curve, Format format, const std::string& config_hash) {
  if (format == Format::Csv) {
    std::string out = header_line(config_hash) + "lambda,fs,fs_renormalized,psi,valid\n";
    for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
      out += num(curve.lambdas[i]) + ',' + num(curve.fs[i]) + ',' + num(curve.fs_renormalized[i]) + ',' +
             num(curve.psi[i]) + ',' + (curve.valid[i] ? "1" : "0") + '\n';
    }
    return out;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    rows.push_back({{"lambda", curve.lambdas[i]},
                    {"fs", curve.fs[i]},
                    {"fs_renormalized", curve.fs_renormalized[i]},
                    {"psi", curve.psi[i]},
                    {"valid", static_cast<bool>(curve.valid[i])}});
  }
  return json_text({{"fs", rows}, {"peak_lambda", curve.peak_lambda}}, config_hash);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw OutputError("write to '" + path.string() + "' failed");
}

void emit(const SweepGrid& grid, Format format, const std::filesystem::path& path,
          const std::string& config_hash) {
  write_text(path, render(grid, format, config_hash));
}

void emit(const BoundaryCurve& curve, Format format, const std::filesystem::path& path,
          const std::string& config_hash) {
  write_text(path, render(curve, format, config_hash));
}

void emit(const FsCurve& curve, Format format, const std::filesystem::path& path,
          const std::string& config_hash) {
  write_text(path, render(curve, format, config_hash));
}

SweepGrid parse_grid_json(const std::string& text) {
  // skip the comment header
  std::string body = text;
  while (!body.empty() && body.front() == '#') {
    const auto eol = body.find('\n');
    body = eol == std::string::npos ? std::string() : body.substr(eol + 1);
  }
  const json doc = json::parse(body);
  SweepGrid grid;
  grid.axis1_name = doc.at("axis1").at("name").get<std::string>();
  grid.axis1 = doc.at("axis1").at("values").get<std::vector<double>>();
  grid.axis2_name = doc.at("axis2").at("name").get<std::string>();
  grid.axis2 = doc.at("axis2").at("values").get<std::vector<double>>();
  for (const json& c : doc.at("cells")) {
    SweepCell cell;
    cell.lambda = c.at("lambda").get<double>();
    cell.kappa = c.at("kappa").get<double>();
    cell.n_qubits = c.at("N").get<int>();
    cell.energy = c.at("energy").get<double>();
    cell.psi = c.at("psi").get<double>();
    cell.psi_rescaled = c.at("psi_rescaled").get<double>();
    cell.photon_number = c.at("photon_number").get<double>();
    cell.converged = c.at("converged").get<bool>();
    cell.iterations = c.at("iterations").get<int>();
    grid.cells.push_back(cell);
  }
  return grid;
}

SweepGrid load_grid_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw OutputError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grid_json(ss.str());
}

}  // namespace dhub
