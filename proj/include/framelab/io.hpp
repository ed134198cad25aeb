#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "framelab/abelian.hpp"
#include "json.hpp"

namespace framelab {

/// Generator vectors come as JSON {"dim": n, "values": [[re, im], ...]}
/// (plain numbers are accepted as real entries; "dim" is optional) or as
/// CSV with one "re,im" or "re" per line and an optional header.
Eigen::VectorXcd vector_from_json(const nlohmann::json& j);
Eigen::VectorXcd vector_from_csv(std::string_view text);
/// Picks the parser from the extension, falling back to sniffing for '{'.
Eigen::VectorXcd read_vector_file(const std::filesystem::path& path);

nlohmann::json vector_to_json(const Eigen::VectorXcd& v);
nlohmann::json to_json(const DualFunction& f);
nlohmann::json to_json(const ZakArray& z);

/// Shortest representation that round-trips through strtod.
std::string format_number(double x);

/// index,re,im
std::string complex_csv(const Eigen::VectorXcd& v);
std::string to_csv(const DualFunction& f);
/// index,re,im with index = n * L + m.
std::string to_csv(const ZakArray& z);
/// eig_index,value
std::string spectrum_csv(const Eigen::VectorXd& spectrum);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace framelab
