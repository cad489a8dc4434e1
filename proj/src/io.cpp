#include "miqubo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace miqubo {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buffer.str();
}

double parse_number(std::string_view token, std::size_t line_number) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_number) + ": '" + std::string(token) +
                     "' is not a number");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::vector<std::string_view> nonempty_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t newline = text.find('\n', start);
    const std::string_view line =
        newline == std::string_view::npos ? text.substr(start) : text.substr(start, newline - start);
    if (!trim(line).empty()) lines.push_back(line);
    if (newline == std::string_view::npos) break;
    start = newline + 1;
  }
  return lines;
}

Eigen::MatrixXd parse_numeric_grid(std::string_view text, bool allow_header) {
  const auto lines = nonempty_lines(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto fields = split_csv_line(lines[r]);
    std::vector<double> row;
    row.reserve(fields.size());
    try {
      for (const auto& field : fields) row.push_back(parse_number(field, r + 1));
    } catch (const ParseError&) {
      if (allow_header && r == 0) continue;  // header line
      throw;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(r + 1) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no numeric rows found");
  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return out;
}

Eigen::MatrixXd covariance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("sigma")) {
    throw ParseError("covariance JSON requires fields 'n' and 'sigma'");
  }
  const auto n = doc["n"];
  const auto sigma = doc["sigma"];
  if (!n.is_number_integer() || !sigma.is_array()) throw ParseError("malformed covariance JSON");
  const Eigen::Index size = n.get<Eigen::Index>();
  if (static_cast<Eigen::Index>(sigma.size()) != size) {
    throw ParseError("'sigma' row count does not match 'n'");
  }
  Eigen::MatrixXd out(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto& row = sigma[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != size) {
      throw ParseError("'sigma' row " + std::to_string(r + 1) + " does not match 'n'");
    }
    for (Eigen::Index c = 0; c < size; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) throw ParseError("'sigma' contains a non-numeric entry");
      out(r, c) = cell.get<double>();
    }
  }
  return out;
}

}  // namespace

CovarianceMatrix load_covariance(const std::filesystem::path& path, CovarianceFormat format) {
  const std::string text = read_file(path);
  if (format == CovarianceFormat::Json) return validate_covariance(covariance_from_json(text));
  return validate_covariance(parse_numeric_grid(text, /*allow_header=*/false));
}

Eigen::MatrixXd load_samples_csv(const std::filesystem::path& path) {
  return parse_numeric_grid(read_file(path), /*allow_header=*/true);
}

CovarianceMatrix estimate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& samples) {
  const Eigen::Index rows = samples.rows();
  if (rows < 2) throw InsufficientSamples("covariance estimation requires at least 2 observations");
  const Eigen::MatrixXd centered = samples.rowwise() - samples.colwise().mean();
  const Eigen::MatrixXd sigma = centered.transpose() * centered / static_cast<double>(rows - 1);
  return validate_covariance(sigma);
}

std::string qubo_to_json(const QuboModel& q) {
  json doc;
  doc["num_variables"] = q.num_variables();
  doc["variables"] = json::array();
  for (const QuboVariable& var : q.variables()) {
    json entry;
    entry["id"] = var.id;
    entry["kind"] = var.auxiliary ? "auxiliary" : "original";
    entry["sensor"] = var.auxiliary ? json(nullptr) : json(var.id);
    entry["pair"] = var.auxiliary ? json{var.pair->first, var.pair->second} : json(nullptr);
    doc["variables"].push_back(entry);
  }
  doc["linear"] = json::object();
  for (const auto& [i, c] : q.linear()) doc["linear"][std::to_string(i)] = c;
  doc["quadratic"] = json::object();
  for (const auto& [ij, c] : q.quadratic()) {
    doc["quadratic"][std::to_string(ij.first) + "," + std::to_string(ij.second)] = c;
  }
  doc["offset"] = q.offset();
  doc["penalties"]["substitutions"] = json::array();
  for (const SubstitutionPenalty& sub : q.substitutions()) {
    doc["penalties"]["substitutions"].push_back({{"aux", sub.aux}, {"weight", sub.weight}});
  }
  doc["penalties"]["cardinality"] =
      q.cardinality() ? json{{"k", q.cardinality()->k}, {"lambda", q.cardinality()->lambda}}
                      : json(nullptr);
  return doc.dump(2) + "\n";
}

QuboModel qubo_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid QUBO JSON: ") + e.what());
  }
  try {
    const int count = doc.at("num_variables").get<int>();
    const auto& variables = doc.at("variables");
    if (static_cast<int>(variables.size()) != count) {
      throw ParseError("variable registry does not match num_variables");
    }

    int sensors = 0;
    for (const auto& var : variables) {
      if (var.at("kind") == "original") ++sensors;
    }
    QuboModel q(sensors);
    for (const auto& var : variables) {
      const int id = var.at("id").get<int>();
      if (var.at("kind") == "original") {
        if (id < 1 || id > sensors || var.at("sensor").get<int>() != id) {
          throw ParseError("original variables must come first with sensor == id");
        }
      } else if (var.at("kind") == "auxiliary") {
        const auto& pair = var.at("pair");
        const int created = q.add_auxiliary(pair.at(0).get<int>(), pair.at(1).get<int>());
        if (created != id) throw ParseError("auxiliary ids must be contiguous after the sensors");
      } else {
        throw ParseError("variable kind must be 'original' or 'auxiliary'");
      }
    }

    for (const auto& [key, value] : doc.at("linear").items()) {
      q.add_linear(std::stoi(key), value.get<double>());
    }
    for (const auto& [key, value] : doc.at("quadratic").items()) {
      const std::size_t comma = key.find(',');
      if (comma == std::string::npos) throw ParseError("quadratic key must be 'i,j'");
      q.add_quadratic(std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1)),
                      value.get<double>());
    }
    q.add_offset(doc.at("offset").get<double>());

    const auto& penalties = doc.at("penalties");
    for (const auto& sub : penalties.at("substitutions")) {
      q.record_substitution(SubstitutionPenalty{sub.at("aux").get<int>(), sub.at("weight").get<double>()});
    }
    if (!penalties.at("cardinality").is_null()) {
      q.set_cardinality(CardinalityPenalty{penalties.at("cardinality").at("k").get<int>(),
                                           penalties.at("cardinality").at("lambda").get<double>()});
    }
    return q;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed QUBO JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed QUBO JSON: non-numeric variable key");
  }
}

void export_qubo(const QuboModel& q, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << qubo_to_json(q);
  if (!out) throw IoError("cannot write " + path.string());
}

QuboModel import_qubo(const std::filesystem::path& path) { return qubo_from_json(read_file(path)); }

}  // namespace miqubo
