#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "streamla/streamla.hpp"

using namespace streamla;

namespace {

using Numeric = std::variant<mat, cx_mat>;

Numeric as_numeric(const AnyMat& any) {
  return std::visit(
      [](const auto& m) -> Numeric {
        using T = typename std::decay_t<decltype(m)>::elem_type;
        if constexpr (is_complex_v<T>) return conv_to<cx_double>(m);
        else return conv_to<double>(m);
      },
      any);
}

FileFormat output_format(const std::string& path, const std::string& name) {
  if (name != "auto") return format_from_name(name);
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "bin") return FileFormat::tagged_binary;
  if (ext == "csv") return FileFormat::csv_ascii;
  return FileFormat::raw_ascii;
}

struct Output {
  std::string path;
  std::string format = "auto";

  void attach(CLI::App* app) {
    app->add_option("-o,--output", path, "Write the result to a file instead of stdout");
    app->add_option("-f,--format", format, "Output format: auto, ascii, csv, bin")->capture_default_str();
  }

  template <class T>
  void emit(const Mat<T>& m, std::string_view header = {}) const {
    if (path.empty()) m.print(std::cout, header);
    else m.save(path, output_format(path, format));
  }

  void emit(const Numeric& n, std::string_view header = {}) const {
    std::visit([&](const auto& m) { emit(m, header); }, n);
  }
};

const Backend& pick_backend(const std::string& name) { return name.empty() ? active_backend() : backend_by_name(name); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamla: inspect, convert and compute with matrix files"};
  app.require_subcommand(1);

  std::string in, in2, from = "auto", backend_name;

  auto* info = app.add_subcommand("info", "Show kind, shape and format of a matrix file");
  info->add_option("file", in)->required()->check(CLI::ExistingFile);

  auto* print = app.add_subcommand("print", "Print a matrix file");
  std::string header;
  print->add_option("file", in)->required()->check(CLI::ExistingFile);
  print->add_option("--header", header, "Header line printed above the matrix");

  auto* convert = app.add_subcommand("convert", "Convert between file formats, keeping the element kind");
  std::string out, to = "auto";
  convert->add_option("input", in)->required()->check(CLI::ExistingFile);
  convert->add_option("output", out)->required();
  convert->add_option("--from", from, "Input format")->capture_default_str();
  convert->add_option("--to", to, "Output format")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate a matrix");
  std::string gen_kind;
  uword rows = 1, cols = 1;
  std::optional<std::uint64_t> seed;
  double lo = 0, hi = 1;
  Output gen_out;
  gen->add_option("kind", gen_kind, "zeros, ones, eye, randu, randn, linspace")
      ->required()
      ->check(CLI::IsMember({"zeros", "ones", "eye", "randu", "randn", "linspace"}));
  gen->add_option("-r,--rows", rows)->capture_default_str();
  gen->add_option("-c,--cols", cols)->capture_default_str();
  gen->add_option("-s,--seed", seed, "Seed for randu/randn");
  gen->add_option("--start", lo, "linspace start")->capture_default_str();
  gen->add_option("--end", hi, "linspace end")->capture_default_str();
  gen_out.attach(gen);

  auto* mul = app.add_subcommand("mul", "Matrix product A * B");
  Output mul_out;
  mul->add_option("a", in)->required()->check(CLI::ExistingFile);
  mul->add_option("b", in2)->required()->check(CLI::ExistingFile);
  mul->add_option("--backend", backend_name, "native or system");
  mul_out.attach(mul);

  auto* solve_cmd = app.add_subcommand("solve", "Solve A * X = B");
  Output solve_out;
  solve_cmd->add_option("a", in)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("b", in2)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--backend", backend_name, "native or system");
  solve_out.attach(solve_cmd);

  auto* stats = app.add_subcommand("stats", "Per-column mean, standard deviation, min and max");
  stats->add_option("file", in)->required()->check(CLI::ExistingFile);

  auto* svd_cmd = app.add_subcommand("svd", "Singular values");
  Output svd_out;
  svd_cmd->add_option("file", in)->required()->check(CLI::ExistingFile);
  svd_cmd->add_option("--backend", backend_name, "native or system");
  svd_out.attach(svd_cmd);

  auto* fft_cmd = app.add_subcommand("fft", "Discrete Fourier transform of a vector");
  Output fft_out;
  bool inverse = false;
  fft_cmd->add_option("file", in)->required()->check(CLI::ExistingFile);
  fft_cmd->add_flag("-i,--inverse", inverse, "Inverse transform");
  fft_out.attach(fft_cmd);

  auto* backend_cmd = app.add_subcommand("backend", "Report the available backends and their routines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) {
      const FileFormat f = detect_format(in);
      AnyMat m = load_any(in, f);
      std::visit(
          [&](const auto& x) {
            std::cout << "kind:   " << kind_name(kind_of(m)) << "\n"
                      << "shape:  " << x.n_rows() << "x" << x.n_cols() << "\n"
                      << "format: " << format_name(f) << "\n";
          },
          m);
    } else if (*print) {
      std::visit([&](const auto& x) { x.print(std::cout, header); }, load_any(in, format_from_name(from)));
    } else if (*convert) {
      save_any(load_any(in, format_from_name(from)), out, output_format(out, to));
    } else if (*gen) {
      if (gen_kind == "linspace") {
        gen_out.emit(linspace(lo, hi, rows));
      } else {
        mat m(rows, cols);
        if (gen_kind == "ones") m.ones();
        else if (gen_kind == "eye") m.eye();
        else if (gen_kind == "randu" || gen_kind == "randn") {
          RngState rng(seed.value_or(RngState::default_seed));
          gen_kind == "randu" ? m.randu(rng) : m.randn(rng);
        }
        gen_out.emit(m);
      }
    } else if (*mul || *solve_cmd) {
      const Backend& be = pick_backend(backend_name);
      Numeric a = as_numeric(load_any(in)), b = as_numeric(load_any(in2));
      if (a.index() != b.index()) {
        if (a.index() == 0) a = conv_to<cx_double>(std::get<mat>(a));
        else b = conv_to<cx_double>(std::get<mat>(b));
      }
      Output& o = *mul ? mul_out : solve_out;
      std::visit(
          [&](const auto& x) {
            using M = std::decay_t<decltype(x)>;
            const M& y = std::get<M>(b);
            o.emit(*mul ? matmul(x, y, be) : solve(x, y, be));
          },
          a);
    } else if (*stats) {
      std::visit(
          [](const auto& x) {
            mat m = real(x);
            mat summary = join_cols(join_cols(mean(m), stddev(m)), join_cols(min(m), max(m)));
            summary.print(std::cout, "mean / stddev / min / max per column:");
          },
          as_numeric(load_any(in)));
    } else if (*svd_cmd) {
      const Backend& be = pick_backend(backend_name);
      std::visit([&](const auto& x) { svd_out.emit(svd_values(x, be)); }, as_numeric(load_any(in)));
    } else if (*fft_cmd) {
      std::visit([&](const auto& x) { fft_out.emit(inverse ? ifft(x) : fft(x)); }, as_numeric(load_any(in)));
    } else if (*backend_cmd) {
      const Routine all[] = {Routine::gemm, Routine::chol, Routine::lu, Routine::eig_sym, Routine::svd, Routine::solve};
      const char* names[] = {"gemm", "chol", "lu", "eig_sym", "svd", "solve"};
      std::cout << "active: " << active_backend().name() << "\n";
      std::cout << "system routines:";
      const Backend& sys = system_backend();
      for (int i = 0; i < 6; ++i)
        if (sys.has(all[i])) std::cout << " " << names[i];
      std::cout << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "streamla: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
