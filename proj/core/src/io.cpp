#include "streamla/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

namespace streamla {

namespace {

constexpr char magic[] = {'S', 'T', 'L', 'A', '1'};
constexpr std::size_t magic_len = sizeof(magic);
constexpr std::size_t header_len = magic_len + 1 + 8 + 8;

template <class T>
constexpr bool is_kind_v = std::is_same_v<T, std::int64_t> || std::is_same_v<T, float> ||
                           std::is_same_v<T, double> || std::is_same_v<T, cx_float> || std::is_same_v<T, cx_double>;

// ---- files ------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

bool has_magic(std::string_view data) {
  return data.size() >= magic_len && std::memcmp(data.data(), magic, magic_len) == 0;
}

// ---- number formatting ------------------------------------------------------------------

template <class R>
void append_real(std::string& out, R v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  if (std::isinf(v)) {
    out += v < 0 ? "-inf" : "inf";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

template <class T>
void append_value(std::string& out, const T& v) {
  if constexpr (is_complex_v<T>) {
    out += '(';
    append_real(out, v.real());
    out += ',';
    append_real(out, v.imag());
    out += ')';
  } else if constexpr (std::is_integral_v<T>) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, static_cast<std::conditional_t<std::is_signed_v<T>, long long, unsigned long long>>(v));
    out.append(buf, res.ptr);
  } else {
    append_real(out, v);
  }
}

// ---- number parsing -------------------------------------------------------------------

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <class R>
bool parse_real(std::string_view tok, R& out) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool is_complex_token(std::string_view tok) { return !tok.empty() && tok.front() == '('; }

template <class R>
bool parse_complex(std::string_view tok, R& re, R& im) {
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')') return false;
  tok = tok.substr(1, tok.size() - 2);
  const auto comma = tok.find(',');
  if (comma == std::string_view::npos) return false;
  return parse_real(tok.substr(0, comma), re) && parse_real(tok.substr(comma + 1), im);
}

bool is_numeric_token(std::string_view tok) {
  double a, b;
  return is_complex_token(tok) ? parse_complex(tok, a, b) : parse_real(tok, a);
}

[[noreturn]] void bad_token(std::string_view tok, std::size_t line) {
  throw ParseError(ParseError::Reason::malformed_token,
                   "line " + std::to_string(line) + ": cannot parse '" + std::string(tok) + "' as a number");
}

template <class T>
T parse_token(std::string_view tok, std::size_t line) {
  if constexpr (is_complex_v<T>) {
    using R = real_t<T>;
    R re, im = 0;
    if (is_complex_token(tok) ? parse_complex(tok, re, im) : parse_real(tok, re)) return T(re, im);
    bad_token(tok, line);
  } else if constexpr (std::is_integral_v<T>) {
    std::string_view t = trim(tok);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    T v{};
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec == std::errc() && res.ptr == t.data() + t.size()) return v;
    double d;
    if (is_complex_token(tok)) {
      double a, b;
      if (!parse_complex(tok, a, b)) bad_token(tok, line);
      throw KindError("line " + std::to_string(line) + ": complex value '" + std::string(tok) +
                      "' cannot be stored in an integer matrix");
    }
    if (!parse_real(tok, d)) bad_token(tok, line);
    if (!std::isfinite(d) || d != std::trunc(d) || d < static_cast<double>(std::numeric_limits<T>::min()) ||
        d >= std::ldexp(1.0, std::numeric_limits<T>::digits))
      throw KindError("line " + std::to_string(line) + ": value '" + std::string(tok) +
                      "' is not representable in an integer matrix");
    return static_cast<T>(d);
  } else {
    T v;
    if (parse_real(tok, v)) return v;
    if (is_complex_token(tok)) {
      double a, b;
      if (!parse_complex(tok, a, b)) bad_token(tok, line);
      throw KindError("line " + std::to_string(line) + ": complex value '" + std::string(tok) +
                      "' cannot be stored in a real matrix");
    }
    bad_token(tok, line);
  }
}

// ---- ascii tables -----------------------------------------------------------------------

struct Table {
  std::size_t n_rows = 0, n_cols = 0;
  std::vector<std::string_view> cells;  // row-major
  std::vector<std::size_t> line_of_row;
  bool any_complex = false;
};

bool line_has_csv_comma(std::string_view line) {
  int depth = 0;
  for (char c : line) {
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0) return true;
  }
  return false;
}

std::vector<std::string_view> split_line(std::string_view line, bool csv) {
  std::vector<std::string_view> out;
  if (csv) {
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      const char c = i < line.size() ? line[i] : ',';
      if (c == '(') ++depth;
      else if (c == ')') --depth;
      else if (c == ',' && depth == 0) {
        out.push_back(trim(line.substr(start, i - start)));
        start = i + 1;
      }
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      int depth = 0;
      while (j < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[j])))) {
        if (line[j] == '(') ++depth;
        else if (line[j] == ')') --depth;
        ++j;
      }
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

Table tokenize(std::string_view data, bool csv) {
  Table t;
  std::size_t pos = 0, line_no = 0;
  bool first = true;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(trim(line), csv);
    if (first) {
      first = false;
      if (csv && !std::all_of(cells.begin(), cells.end(), is_numeric_token)) continue;
    }
    if (t.n_rows == 0) {
      t.n_cols = cells.size();
    } else if (cells.size() != t.n_cols) {
      throw ParseError(ParseError::Reason::ragged_rows,
                       "line " + std::to_string(line_no) + ": expected " + std::to_string(t.n_cols) +
                           " values, found " + std::to_string(cells.size()));
    }
    for (auto c : cells) {
      if (is_complex_token(c)) t.any_complex = true;
      t.cells.push_back(c);
    }
    t.line_of_row.push_back(line_no);
    ++t.n_rows;
  }
  return t;
}

template <class T>
Mat<T> table_to_mat(const Table& t) {
  Mat<T> m(t.n_rows, t.n_cols);
  for (std::size_t r = 0; r < t.n_rows; ++r)
    for (std::size_t c = 0; c < t.n_cols; ++c) m.at(r, c) = parse_token<T>(t.cells[r * t.n_cols + c], t.line_of_row[r]);
  return m;
}

template <class T>
std::string to_ascii(const Mat<T>& m, char sep) {
  std::string out;
  for (uword r = 0; r < m.n_rows(); ++r) {
    for (uword c = 0; c < m.n_cols(); ++c) {
      if (c > 0) out += sep;
      append_value(out, m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

// ---- binary ---------------------------------------------------------------------------

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

template <class R>
void put_real(std::string& out, R v) {
  if constexpr (sizeof(R) == 4) {
    const auto u = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) out += static_cast<char>((u >> (8 * i)) & 0xff);
  } else {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
}

template <class R>
R get_real(const unsigned char* p) {
  if constexpr (sizeof(R) == 4) {
    std::uint32_t u = 0;
    for (int i = 3; i >= 0; --i) u = (u << 8) | p[i];
    return std::bit_cast<R>(u);
  } else {
    return std::bit_cast<R>(get_u64(p));
  }
}

template <class T>
std::string to_binary(const Mat<T>& m) {
  std::string out(magic, magic_len);
  out += static_cast<char>(kind_of<T>());
  put_u64(out, m.n_rows());
  put_u64(out, m.n_cols());
  for (const T& v : m) {
    if constexpr (is_complex_v<T>) {
      put_real(out, v.real());
      put_real(out, v.imag());
    } else if constexpr (std::is_integral_v<T>) {
      put_u64(out, static_cast<std::uint64_t>(v));
    } else {
      put_real(out, v);
    }
  }
  return out;
}

struct BinaryHeader {
  ElementKind kind;
  std::uint64_t n_rows, n_cols;
};

std::size_t kind_size(ElementKind k) {
  switch (k) {
    case ElementKind::Int: return 8;
    case ElementKind::F32: return 4;
    case ElementKind::F64: return 8;
    case ElementKind::C64: return 8;
    case ElementKind::C128: return 16;
  }
  return 0;
}

BinaryHeader read_header(std::string_view data) {
  const std::size_t n = std::min(data.size(), magic_len);
  if (std::memcmp(data.data(), magic, n) != 0 || data.empty())
    throw ParseError(ParseError::Reason::bad_magic, "not a tagged binary file (bad magic bytes)");
  if (data.size() < header_len)
    throw ParseError(ParseError::Reason::truncated, "truncated binary file: header is " +
                                                        std::to_string(data.size()) + " of " +
                                                        std::to_string(header_len) + " bytes");
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  const unsigned code = p[magic_len];
  if (code < 1 || code > 5)
    throw ParseError(ParseError::Reason::bad_kind, "unknown element kind code " + std::to_string(code));
  BinaryHeader h{static_cast<ElementKind>(code), get_u64(p + magic_len + 1), get_u64(p + magic_len + 9)};
  const std::size_t es = kind_size(h.kind);
  const std::size_t avail = data.size() - header_len;
  if (h.n_cols != 0 && h.n_rows > std::numeric_limits<std::size_t>::max() / h.n_cols / es)
    throw ParseError(ParseError::Reason::truncated, "truncated binary file: declared size " +
                                                        detail::dims(h.n_rows, h.n_cols) + " exceeds the data");
  const std::size_t need = h.n_rows * h.n_cols * es;
  if (avail < need)
    throw ParseError(ParseError::Reason::truncated, "truncated binary file: expected " + std::to_string(need) +
                                                        " data bytes, found " + std::to_string(avail));
  if (avail > need)
    throw ParseError(ParseError::Reason::trailing_data,
                     "binary file has " + std::to_string(avail - need) + " unexpected trailing bytes");
  return h;
}

template <class T>
Mat<T> from_binary(std::string_view data) {
  const BinaryHeader h = read_header(data);
  if constexpr (!is_kind_v<T>) {
    throw KindError("binary files store " + std::string(kind_name(h.kind)) +
                    " data; load them into a matrix of that kind");
  } else {
    if (h.kind != kind_of<T>())
      throw KindError("file holds " + std::string(kind_name(h.kind)) + " data, cannot load into a " +
                      std::string(kind_name(kind_of<T>())) + " matrix");
    Mat<T> m(h.n_rows, h.n_cols);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data()) + header_len;
    for (T& v : m) {
      if constexpr (is_complex_v<T>) {
        using R = real_t<T>;
        v = T(get_real<R>(p), get_real<R>(p + sizeof(R)));
        p += 2 * sizeof(R);
      } else if constexpr (std::is_integral_v<T>) {
        v = static_cast<T>(get_u64(p));
        p += 8;
      } else {
        v = get_real<T>(p);
        p += sizeof(T);
      }
    }
    return m;
  }
}

FileFormat detect(std::string_view data) {
  if (has_magic(data)) return FileFormat::tagged_binary;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    if (line_has_csv_comma(data.substr(pos, end - pos))) return FileFormat::csv_ascii;
    pos = end + 1;
  }
  return FileFormat::raw_ascii;
}

template <class T>
Mat<T> decode(std::string_view data, FileFormat format) {
  if (format == FileFormat::auto_detect) format = detect(data);
  switch (format) {
    case FileFormat::tagged_binary: return from_binary<T>(data);
    case FileFormat::csv_ascii: return table_to_mat<T>(tokenize(data, true));
    default: return table_to_mat<T>(tokenize(data, false));
  }
}

// ---- printing ---------------------------------------------------------------------------

template <class R>
void append_fixed(std::string& out, R v, bool scientific) {
  if (std::isnan(v) || std::isinf(v)) {
    append_real(out, v);
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, scientific ? std::chars_format::scientific : std::chars_format::fixed, 4);
  out.append(buf, res.ptr);
}

template <class T>
bool wants_scientific(const Mat<T>& m) {
  double hi = 0;
  auto see = [&](double a) {
    if (std::isfinite(a)) hi = std::max(hi, a);
  };
  for (const T& v : m) {
    if constexpr (is_complex_v<T>) {
      see(std::abs(static_cast<double>(v.real())));
      see(std::abs(static_cast<double>(v.imag())));
    } else {
      see(std::abs(static_cast<double>(v)));
    }
  }
  if (hi >= 1e5) return true;
  double lo_sig = std::numeric_limits<double>::infinity();
  auto small = [&](double a) {
    if (std::isfinite(a) && a > hi * 1e-12) lo_sig = std::min(lo_sig, a);
  };
  for (const T& v : m) {
    if constexpr (is_complex_v<T>) {
      small(std::abs(static_cast<double>(v.real())));
      small(std::abs(static_cast<double>(v.imag())));
    } else {
      small(std::abs(static_cast<double>(v)));
    }
  }
  return lo_sig < 1e-4;
}

template <class T>
std::string format_element(const T& v, bool scientific) {
  std::string s;
  if constexpr (std::is_integral_v<T>) {
    append_value(s, v);
  } else if constexpr (is_complex_v<T>) {
    s += '(';
    append_fixed(s, v.real(), scientific);
    s += ',';
    append_fixed(s, v.imag(), scientific);
    s += ')';
  } else {
    append_fixed(s, v, scientific);
  }
  return s;
}

}  // namespace

// ---- Mat members ------------------------------------------------------------------------

template <Scalar T>
void Mat<T>::print(std::ostream& os, std::string_view header) const {
  if (!header.empty()) os << header << '\n';
  if (is_empty()) {
    os << "[matrix size: " << n_rows() << 'x' << n_cols() << "]\n";
    return;
  }
  bool sci = false;
  if constexpr (!std::is_integral_v<T>) sci = wants_scientific(*this);
  std::vector<std::string> cells(n_elem());
  std::size_t width = 0;
  for (uword i = 0; i < n_elem(); ++i) {
    cells[i] = format_element(at(i), sci);
    width = std::max(width, cells[i].size());
  }
  std::string line;
  for (uword r = 0; r < n_rows(); ++r) {
    line.clear();
    for (uword c = 0; c < n_cols(); ++c) {
      const std::string& s = cells[r + c * n_rows()];
      if (c > 0) line += ' ';
      line.append(width - s.size(), ' ');
      line += s;
    }
    os << line << '\n';
  }
}

template <Scalar T>
void Mat<T>::print(std::string_view header) const {
  print(std::cout, header);
}

template <Scalar T>
void Mat<T>::save(const std::string& path, FileFormat format) const {
  switch (format) {
    case FileFormat::tagged_binary:
      if constexpr (is_kind_v<T>) {
        write_file(path, to_binary(*this));
        return;
      } else {
        throw KindError("tagged binary files store int64, f32, f64, c64 or c128 data only");
      }
    case FileFormat::csv_ascii: write_file(path, to_ascii(*this, ',')); return;
    case FileFormat::raw_ascii: write_file(path, to_ascii(*this, ' ')); return;
    case FileFormat::auto_detect: throw DomainError("save: a concrete file format is required");
  }
}

template <Scalar T>
void Mat<T>::load(const std::string& path, FileFormat format) {
  const std::string data = read_file(path);
  try {
    *this = decode<T>(data, format);
  } catch (ParseError& e) {
    throw ParseError(e.reason(), path + ": " + e.what());
  }
}

#define STREAMLA_INSTANTIATE_IO(T)                                           \
  template void Mat<T>::print(std::ostream&, std::string_view) const;       \
  template void Mat<T>::print(std::string_view) const;                      \
  template void Mat<T>::save(const std::string&, FileFormat) const;         \
  template void Mat<T>::load(const std::string&, FileFormat);

STREAMLA_INSTANTIATE_IO(std::int64_t)
STREAMLA_INSTANTIATE_IO(float)
STREAMLA_INSTANTIATE_IO(double)
STREAMLA_INSTANTIATE_IO(cx_float)
STREAMLA_INSTANTIATE_IO(cx_double)
STREAMLA_INSTANTIATE_IO(uword)
STREAMLA_INSTANTIATE_IO(std::uint8_t)

#undef STREAMLA_INSTANTIATE_IO

// ---- free functions ---------------------------------------------------------------------

FileFormat format_from_name(std::string_view name) {
  if (name == "auto") return FileFormat::auto_detect;
  if (name == "ascii" || name == "raw_ascii") return FileFormat::raw_ascii;
  if (name == "csv" || name == "csv_ascii") return FileFormat::csv_ascii;
  if (name == "bin" || name == "binary" || name == "tagged_binary") return FileFormat::tagged_binary;
  throw DomainError("unknown file format '" + std::string(name) + "' (expected auto, ascii, csv or binary)");
}

std::string_view format_name(FileFormat f) {
  switch (f) {
    case FileFormat::auto_detect: return "auto";
    case FileFormat::raw_ascii: return "raw_ascii";
    case FileFormat::csv_ascii: return "csv_ascii";
    case FileFormat::tagged_binary: return "tagged_binary";
  }
  return "unknown";
}

FileFormat detect_format(const std::string& path) { return detect(read_file(path)); }

AnyMat load_any(const std::string& path, FileFormat format) {
  const std::string data = read_file(path);
  if (format == FileFormat::auto_detect) format = detect(data);
  try {
    if (format == FileFormat::tagged_binary) {
      switch (read_header(data).kind) {
        case ElementKind::Int: return from_binary<std::int64_t>(data);
        case ElementKind::F32: return from_binary<float>(data);
        case ElementKind::F64: return from_binary<double>(data);
        case ElementKind::C64: return from_binary<cx_float>(data);
        case ElementKind::C128: return from_binary<cx_double>(data);
      }
    }
    const Table t = tokenize(data, format == FileFormat::csv_ascii);
    if (t.any_complex) return table_to_mat<cx_double>(t);
    return table_to_mat<double>(t);
  } catch (ParseError& e) {
    throw ParseError(e.reason(), path + ": " + e.what());
  }
}

void save_any(const AnyMat& m, const std::string& path, FileFormat format) {
  std::visit([&](const auto& x) { x.save(path, format); }, m);
}

ElementKind kind_of(const AnyMat& m) {
  return std::visit([](const auto& x) { return kind_of<typename std::decay_t<decltype(x)>::elem_type>(); }, m);
}

}  // namespace streamla
