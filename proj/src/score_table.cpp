#include "salbench/score_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "salbench/error.hpp"

namespace salbench {

std::size_t ScoreTable::missing_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += !r.ok();
  return n;
}

std::map<std::string, std::size_t> ScoreTable::missing_by_reason() const {
  std::map<std::string, std::size_t> out;
  for (const auto& r : rows)
    if (!r.ok()) ++out[r.error];
  return out;
}

namespace {

std::vector<std::string> first_seen(const std::vector<ScoreRow>& rows, std::string ScoreRow::*field) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : rows)
    if (seen.insert(r.*field).second) out.push_back(r.*field);
  return out;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedEntry, std::string("bad ") + what + " '" + s + "' in score table");
  }
  return v;
}

}  // namespace

std::vector<std::string> ScoreTable::models() const { return first_seen(rows, &ScoreRow::model); }
std::vector<std::string> ScoreTable::images() const { return first_seen(rows, &ScoreRow::image); }

std::optional<double> ScoreTable::find(const std::string& image, const std::string& model, metrics::GtKind gt,
                                       metrics::MetricId metric) const {
  for (const auto& r : rows) {
    if (r.image == image && r.model == model && r.gt == gt && r.metric == metric) {
      if (r.ok()) return r.value;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const ScoreTable& table) {
  out << "image,model,gt,metric,value,reps,seed,error\n";
  for (const auto& r : table.rows) {
    out << quote(r.image) << ',' << quote(r.model) << ',' << metrics::to_string(r.gt) << ','
        << metrics::to_string(r.metric) << ',' << (r.ok() ? format_double(r.value) : "") << ',' << r.reps << ','
        << r.seed << ',' << quote(r.error) << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const ScoreTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  write_csv(out, table);
}

ScoreTable read_score_csv(std::istream& in) {
  ScoreTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedEntry, "empty score table");
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw Error(ErrorCode::MalformedEntry, "score row needs 8 columns: " + line);
    ScoreRow r;
    r.image = f[0];
    r.model = f[1];
    r.gt = metrics::parse_gt_kind(f[2]);
    r.metric = metrics::parse_metric(f[3]);
    r.error = f[7];
    r.value = r.ok() ? parse_number<double>(f[4], "value") : std::numeric_limits<double>::quiet_NaN();
    r.reps = parse_number<int>(f[5], "reps");
    r.seed = parse_number<std::uint64_t>(f[6], "seed");
    table.rows.push_back(std::move(r));
  }
  return table;
}

ScoreTable read_score_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  return read_score_csv(in);
}

CategoryIndex category_index(const corpus::DatasetManifest& manifest) {
  CategoryIndex index;
  for (const auto& e : manifest.entries) index[e.id] = e.category;
  return index;
}

void write_categories_csv(const std::filesystem::path& path, const CategoryIndex& index) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << "image,category\n";
  for (const auto& [image, cat] : index) out << quote(image) << ',' << corpus::to_string(cat) << '\n';
}

CategoryIndex read_categories_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  CategoryIndex index;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw Error(ErrorCode::MalformedEntry, "category row needs 2 columns: " + line);
    index[f[0]] = corpus::parse_category(f[1]);
  }
  return index;
}

}  // namespace salbench
