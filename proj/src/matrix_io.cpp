#include "bjortho/matrix_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace bjortho {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const auto where = [&] {
    return "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
  };
  std::size_t start = 0;
  std::size_t end = cell.size();
  while (start < end && std::isspace(static_cast<unsigned char>(cell[start]))) ++start;
  while (end > start && std::isspace(static_cast<unsigned char>(cell[end - 1]))) --end;
  const std::string token = cell.substr(start, end - start);
  if (token.empty()) throw InvalidInput("empty CSV cell at " + where());
  char* tail = nullptr;
  const double value = std::strtod(token.c_str(), &tail);
  if (tail != token.c_str() + token.size()) {
    throw InvalidInput("malformed number '" + token + "' at " + where());
  }
  if (!std::isfinite(value)) {
    throw InvalidInput("non-finite value at " + where());
  }
  return value;
}

Matrix parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) {
      ++lineno;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    std::size_t colno = 0;
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_cell(cell, lineno, colno));
      ++colno;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInput("row " + std::to_string(lineno + 1) + " has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
    ++lineno;
  }
  if (rows.empty()) throw InvalidInput("CSV contains no data rows");
  Matrix M(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.front().size(); ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return M;
}

char first_printable(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c;
  }
  return '\0';
}

nlohmann::json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("invalid JSON in " + path + ": " + e.what());
  }
}

void append_escaped(const std::string& s, std::string& out) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void append_number(double v, std::string& out) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

bool is_scalar_array(const ordered_json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(it.key(), out);
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(j)) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          dump_rec(e, out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(e, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::string:
      append_escaped(j.get_ref<const std::string&>(), out);
      return;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case nlohmann::json::value_t::number_float:
      append_number(j.get<double>(), out);
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace

ordered_json matrix_to_json(const Matrix& M) {
  ordered_json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  ordered_json data = ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index je = 0; je < M.cols(); ++je) row.push_back(M(i, je));
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw InvalidInput("matrix JSON must be an object {\"rows\", \"cols\", \"data\"}");
  }
  for (const char* key : {"rows", "cols", "data"}) {
    if (!j.contains(key)) {
      throw InvalidInput(std::string("matrix JSON is missing \"") + key + "\"");
    }
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw InvalidInput("matrix JSON: \"rows\" and \"cols\" must be integers");
  }
  const std::int64_t rows = j["rows"].get<std::int64_t>();
  const std::int64_t cols = j["cols"].get<std::int64_t>();
  if (rows <= 0 || cols <= 0) {
    throw InvalidInput("matrix JSON: \"rows\" and \"cols\" must be positive");
  }
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows)) {
    throw InvalidInput("matrix JSON: \"data\" must be an array of " +
                       std::to_string(rows) + " rows");
  }
  Matrix M(rows, cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& row = data[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
      throw InvalidInput("matrix JSON: data row " + std::to_string(i + 1) + " must have " +
                         std::to_string(cols) + " entries");
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        throw InvalidInput("matrix JSON: entry at row " + std::to_string(i + 1) +
                           ", column " + std::to_string(k + 1) + " is not a number");
      }
      const double v = row[k].get<double>();
      if (!std::isfinite(v)) {
        throw InvalidInput("matrix JSON: non-finite value at row " + std::to_string(i + 1) +
                           ", column " + std::to_string(k + 1));
      }
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
    }
  }
  return M;
}

ordered_json vector_to_json(const Vector& v) {
  ordered_json j = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInput("vector JSON must be a non-empty array of numbers");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw InvalidInput("vector JSON: entry " + std::to_string(i + 1) + " is not a number");
    }
    const double x = j[i].get<double>();
    if (!std::isfinite(x)) {
      throw InvalidInput("vector JSON: non-finite value at entry " + std::to_string(i + 1));
    }
    v(static_cast<Eigen::Index>(i)) = x;
  }
  return v;
}

Matrix load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  const char head = first_printable(text);
  if (head == '{') return matrix_from_json(parse_json_text(text, path));
  if (head == '[') {
    throw InvalidInput("matrix JSON in " + path +
                       " must be an object {\"rows\", \"cols\", \"data\"}, not an array");
  }
  try {
    return parse_csv(text);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Vector load_vector(const std::string& path) {
  const std::string text = read_file(path);
  const char head = first_printable(text);
  if (head == '[') return vector_from_json(parse_json_text(text, path));
  Matrix M;
  if (head == '{') {
    M = matrix_from_json(parse_json_text(text, path));
  } else {
    try {
      M = parse_csv(text);
    } catch (const InvalidInput& e) {
      throw InvalidInput(path + ": " + e.what());
    }
  }
  if (M.rows() == 1) return M.row(0).transpose();
  if (M.cols() == 1) return M.col(0);
  throw InvalidInput("vector in " + path + " must have a single row or column; got " +
                     std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace bjortho
