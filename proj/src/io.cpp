#include "framelab/io.hpp"

#include <charconv>
#include <optional>
#include <fstream>
#include <sstream>
#include <vector>

namespace framelab {

namespace {

Complex entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && (e.size() == 1 || e.size() == 2) && e[0].is_number() &&
      (e.size() == 1 || e[1].is_number())) {
    return {e[0].get<double>(), e.size() == 2 ? e[1].get<double>() : 0.0};
  }
  throw Error(ErrorCode::ParseError, "vector entries must be numbers or [re, im] pairs");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Eigen::VectorXcd vector_from_json(const nlohmann::json& j) {
  const nlohmann::json* values = &j;
  std::optional<long long> dim;
  if (j.is_object()) {
    if (!j.contains("values")) throw Error(ErrorCode::ParseError, "generator JSON needs a \"values\" array");
    values = &j.at("values");
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_integer()) throw Error(ErrorCode::ParseError, "\"dim\" must be an integer");
      dim = j.at("dim").get<long long>();
    }
  }
  if (!values->is_array()) throw Error(ErrorCode::ParseError, "generator values must be an array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values->size()));
  for (std::size_t i = 0; i < values->size(); ++i) v(static_cast<Eigen::Index>(i)) = entry_from_json((*values)[i]);
  if (dim && *dim != v.size()) {
    throw Error(ErrorCode::DimMismatch, "\"dim\" is " + std::to_string(*dim) + " but " +
                                            std::to_string(v.size()) + " values were given");
  }
  return v;
}

Eigen::VectorXcd vector_from_csv(std::string_view text) {
  std::vector<Complex> entries;
  bool first_line = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    double re = 0.0, im = 0.0;
    const bool ok = comma == std::string_view::npos
                        ? parse_double(line, re)
                        : parse_double(line.substr(0, comma), re) && parse_double(line.substr(comma + 1), im);
    if (!ok) {
      if (first_line) {  // header
        first_line = false;
        continue;
      }
      throw Error(ErrorCode::ParseError, "bad CSV entry on line " + std::to_string(line_no));
    }
    first_line = false;
    entries.emplace_back(re, im);
  }
  return Eigen::Map<Eigen::VectorXcd>(entries.data(), static_cast<Eigen::Index>(entries.size()));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

Eigen::VectorXcd read_vector_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const auto ext = path.extension().string();
  const auto head = trim(text);
  const bool json = ext == ".json" || (ext != ".csv" && !head.empty() && (head.front() == '{' || head.front() == '['));
  if (!json) return vector_from_csv(text);
  try {
    return vector_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "'" + path.string() + "': " + e.what());
  }
}

nlohmann::json vector_to_json(const Eigen::VectorXcd& v) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& x : v) values.push_back({x.real(), x.imag()});
  return {{"dim", v.size()}, {"values", values}};
}

nlohmann::json to_json(const DualFunction& f) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& x : f.values()) values.push_back({x.real(), x.imag()});
  return {{"group", f.group()->spec()}, {"values", values}};
}

nlohmann::json to_json(const ZakArray& z) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index n = 0; n < z.values.rows(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index m = 0; m < z.values.cols(); ++m) row.push_back({z.values(n, m).real(), z.values(n, m).imag()});
    rows.push_back(row);
  }
  return {{"L", z.l}, {"M", z.m}, {"values", rows}};
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string complex_csv(const Eigen::VectorXcd& v) {
  std::string out = "index,re,im\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += std::to_string(i) + "," + format_number(v(i).real()) + "," + format_number(v(i).imag()) + "\n";
  }
  return out;
}

std::string to_csv(const DualFunction& f) { return complex_csv(f.values()); }

std::string to_csv(const ZakArray& z) {
  Eigen::VectorXcd flat(z.values.size());
  for (Eigen::Index n = 0; n < z.values.rows(); ++n)
    for (Eigen::Index m = 0; m < z.values.cols(); ++m) flat(n * z.values.cols() + m) = z.values(n, m);
  return complex_csv(flat);
}

std::string spectrum_csv(const Eigen::VectorXd& spectrum) {
  std::string out = "eig_index,value\n";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) out += std::to_string(i) + "," + format_number(spectrum(i)) + "\n";
  return out;
}

}  // namespace framelab
