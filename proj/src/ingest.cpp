#include "grn/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "grn/error.hpp"
#include "grn/format.hpp"

namespace grn {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_missing_token(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return true;
  const auto l = lower(cell);
  return l == "na" || l == "nan" || l == "null";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path.string() + "'");
  return in;
}

// Shared row reader for TSV and series-matrix bodies.
class MatrixBuilder {
 public:
  void set_header(std::string_view line, std::size_t line_no) {
    auto fields = split_tabs(line);
    if (fields.size() < 2) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": header needs at least one sample column");
    }
    for (std::size_t i = 1; i < fields.size(); ++i) raw_.sample_ids.push_back(unquote(fields[i]));
  }

  void add_row(std::string_view line, std::size_t line_no) {
    auto fields = split_tabs(line);
    const std::size_t expected = raw_.sample_ids.size() + 1;
    if (fields.size() != expected) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                        " fields, found " + std::to_string(fields.size()));
    }
    raw_.gene_ids.push_back(unquote(fields[0]));
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (is_missing_token(fields[i])) {
        raw_.values.push_back(kMissing);
        continue;
      }
      double v = 0;
      if (!parse_double(fields[i], v)) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ", column " + std::to_string(i + 1) +
                                          ": not a number: '" + std::string(fields[i]) + "'");
      }
      raw_.values.push_back(v);
    }
  }

  bool has_header() const { return !raw_.sample_ids.empty(); }
  RawMatrix take() { return std::move(raw_); }

 private:
  RawMatrix raw_;
};

}  // namespace

LabelTable read_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  LabelTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = strip_cr(line);
    if (trim(view).empty()) continue;
    auto fields = split_tabs(view);
    if (fields.size() != 2) {
      throw Error(ErrorKind::Label, path.string() + " line " + std::to_string(line_no) +
                                        ": expected 'sample_id<TAB>class'");
    }
    table.emplace_back(unquote(fields[0]), unquote(fields[1]));
  }
  return table;
}

ClassNames resolve_class_names(const LabelTable& labels,
                               const std::optional<std::pair<std::string, std::string>>& explicit_names) {
  if (explicit_names) return ClassNames{explicit_names->first, explicit_names->second};

  std::vector<std::string> order;
  for (const auto& [sample, cls] : labels) {
    if (std::find(order.begin(), order.end(), cls) == order.end()) order.push_back(cls);
  }
  if (order.size() != 2) {
    throw Error(ErrorKind::Label, "label file must name exactly two classes, found " + std::to_string(order.size()));
  }
  const auto a = lower(order[0]);
  const auto b = lower(order[1]);
  if (a == "normal" && b == "tumor") return ClassNames{order[1], order[0]};
  return ClassNames{order[0], order[1]};
}

ExpressionMatrix attach_labels(RawMatrix raw, const LabelTable& labels,
                               const std::optional<std::pair<std::string, std::string>>& explicit_names) {
  std::unordered_map<std::string, std::string> by_sample;
  for (const auto& [sample, cls] : labels) {
    auto [it, inserted] = by_sample.emplace(sample, cls);
    if (!inserted && it->second != cls) {
      throw Error(ErrorKind::Label, "sample '" + sample + "' has conflicting labels");
    }
  }

  // Only labels of samples actually present decide the class set.
  LabelTable present;
  for (const auto& id : raw.sample_ids) {
    auto it = by_sample.find(id);
    if (it == by_sample.end()) throw Error(ErrorKind::Label, "sample '" + id + "' has no label");
    present.emplace_back(id, it->second);
  }
  const ClassNames names = resolve_class_names(present, explicit_names);

  std::vector<SampleClass> classes;
  classes.reserve(present.size());
  for (const auto& [id, cls] : present) {
    if (cls == names.tumor) {
      classes.push_back(SampleClass::Tumor);
    } else if (cls == names.normal) {
      classes.push_back(SampleClass::Normal);
    } else {
      throw Error(ErrorKind::Label, "sample '" + id + "' has class '" + cls + "', expected '" + names.tumor +
                                        "' or '" + names.normal + "'");
    }
  }
  for (auto c : {SampleClass::Tumor, SampleClass::Normal}) {
    const auto n = std::count(classes.begin(), classes.end(), c);
    if (n < 2) {
      throw Error(ErrorKind::Label, "class '" + names.name(c) + "' has " + std::to_string(n) +
                                        " sample(s); at least 2 are required");
    }
  }
  return ExpressionMatrix(std::move(raw.gene_ids), std::move(raw.sample_ids), std::move(raw.values),
                          std::move(classes), names);
}

RawMatrix read_tsv_matrix(std::istream& in) {
  MatrixBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = strip_cr(line);
    if (trim(view).empty()) continue;
    if (!builder.has_header()) {
      builder.set_header(view, line_no);
    } else {
      builder.add_row(view, line_no);
    }
  }
  if (!builder.has_header()) throw Error(ErrorKind::Parse, "empty expression file");
  return builder.take();
}

RawMatrix read_tsv_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_tsv_matrix(in);
}

ExpressionMatrix parse_tsv(const std::filesystem::path& path, const std::filesystem::path& label_path) {
  auto raw = read_tsv_matrix(path);
  return attach_labels(std::move(raw), read_labels(label_path));
}

RawMatrix parse_series_matrix(std::istream& in) {
  MatrixBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  bool inside = false;
  bool closed = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = strip_cr(line);
    const auto t = trim(view);
    if (t == "!series_matrix_table_begin") {
      if (inside || closed) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": nested table");
      inside = true;
      continue;
    }
    if (t == "!series_matrix_table_end") {
      if (!inside) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": table end without begin");
      inside = false;
      closed = true;
      continue;
    }
    if (!inside || t.empty()) continue;
    if (!builder.has_header()) {
      builder.set_header(view, line_no);
    } else {
      builder.add_row(view, line_no);
    }
  }
  if (!closed) {
    throw Error(ErrorKind::Parse, inside ? "series matrix: missing !series_matrix_table_end"
                                         : "series matrix: missing !series_matrix_table_begin");
  }
  if (!builder.has_header()) throw Error(ErrorKind::Parse, "series matrix: empty table");
  return builder.take();
}

RawMatrix parse_series_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_series_matrix(in);
}

void write_tsv_matrix(std::ostream& out, const ExpressionMatrix& m) {
  out << "gene_id";
  for (const auto& s : m.sample_ids()) out << '\t' << s;
  out << '\n';
  for (std::size_t g = 0; g < m.genes(); ++g) {
    out << m.gene_ids()[g];
    for (double v : m.row(g)) out << '\t' << (is_missing(v) ? std::string("NA") : format_shortest(v));
    out << '\n';
  }
}

void write_labels(std::ostream& out, const ExpressionMatrix& m) {
  for (std::size_t s = 0; s < m.samples(); ++s) {
    out << m.sample_ids()[s] << '\t' << m.class_names().name(m.labels()[s]) << '\n';
  }
}

// ---------------------------------------------------------------------------

bool is_placeholder_gene_id(const std::string& id) {
  const auto t = lower(trim(id));
  return t.empty() || t == "na" || t == "n/a" || t == "null" || t == "---";
}

Preprocessed preprocess(const ExpressionMatrix& m, const NormalizationSpec& spec) {
  if (!(spec.missing_drop_fraction > 0.0 && spec.missing_drop_fraction <= 1.0)) {
    throw Error(ErrorKind::Domain, "missing drop fraction must lie in (0, 1]");
  }
  const std::size_t n_samples = m.samples();
  const auto& labels = m.labels();
  PreprocessReport report;

  std::vector<std::string> ids;
  std::vector<double> values;
  values.reserve(m.values().size());

  for (std::size_t g = 0; g < m.genes(); ++g) {
    const auto& id = m.gene_ids()[g];
    if (is_placeholder_gene_id(id)) {
      report.dropped_unnamed.push_back(id);
      continue;
    }
    auto src = m.row(g);
    const auto n_missing = static_cast<std::size_t>(std::count_if(src.begin(), src.end(), is_missing));
    if (static_cast<double>(n_missing) > spec.missing_drop_fraction * static_cast<double>(n_samples)) {
      report.dropped_missing.push_back(id);
      continue;
    }

    std::vector<double> row(src.begin(), src.end());
    if (n_missing > 0) {
      double sum[2] = {0, 0};
      std::size_t count[2] = {0, 0};
      double all_sum = 0;
      for (std::size_t s = 0; s < n_samples; ++s) {
        if (is_missing(row[s])) continue;
        const auto c = static_cast<int>(labels[s]);
        sum[c] += row[s];
        ++count[c];
        all_sum += row[s];
      }
      const double all_mean = all_sum / static_cast<double>(n_samples - n_missing);
      for (std::size_t s = 0; s < n_samples; ++s) {
        if (!is_missing(row[s])) continue;
        const auto c = static_cast<int>(labels[s]);
        // A class with no observation for this gene falls back to the gene mean.
        row[s] = count[c] > 0 ? sum[c] / static_cast<double>(count[c]) : all_mean;
        ++report.imputed_cells;
      }
    }

    if (spec.log2_transform) {
      for (double& v : row) {
        if (!(v > -1.0)) {
          throw Error(ErrorKind::Domain, "log2(x+1) undefined for value " + format_shortest(v) + " of gene '" +
                                             id + "'");
        }
        v = std::log2(v + 1.0);
      }
    }

    if (spec.method == Normalization::ZScore) {
      const double mean = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n_samples);
      double ss = 0;
      for (double v : row) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(n_samples - 1));
      if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
        report.dropped_zero_variance.push_back(id);
        continue;
      }
      for (double& v : row) v = (v - mean) / sd;
    }

    ids.push_back(id);
    values.insert(values.end(), row.begin(), row.end());
  }

  if (ids.empty()) throw Error(ErrorKind::EmptyResult, "preprocessing dropped every gene");
  return {ExpressionMatrix(std::move(ids), m.sample_ids(), std::move(values), m.labels(), m.class_names()),
          std::move(report)};
}

std::vector<SampleSummaryRow> sample_summary(const ExpressionMatrix& m) {
  std::vector<SampleSummaryRow> rows;
  rows.reserve(m.samples());
  const std::size_t n = m.genes();
  std::vector<double> col(n);
  for (std::size_t s = 0; s < m.samples(); ++s) {
    for (std::size_t g = 0; g < n; ++g) col[g] = m.at(g, s);
    SampleSummaryRow row;
    row.sample_id = m.sample_ids()[s];
    row.class_name = m.class_names().name(m.labels()[s]);
    if (n > 0) {
      row.mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
      double ss = 0;
      for (double v : col) ss += (v - row.mean) * (v - row.mean);
      row.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
      std::sort(col.begin(), col.end());
      row.min = col.front();
      row.max = col.back();
      row.median = n % 2 == 1 ? col[n / 2] : 0.5 * (col[n / 2 - 1] + col[n / 2]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sample_summary(std::ostream& out, const std::vector<SampleSummaryRow>& rows) {
  out << "sample_id\tclass\tmean\tmedian\tstddev\tmin\tmax\n";
  for (const auto& r : rows) {
    out << r.sample_id << '\t' << r.class_name << '\t' << format_significant(r.mean, 10) << '\t'
        << format_significant(r.median, 10) << '\t' << format_significant(r.stddev, 10) << '\t'
        << format_significant(r.min, 10) << '\t' << format_significant(r.max, 10) << '\n';
  }
}

}  // namespace grn
