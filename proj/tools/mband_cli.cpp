#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mband/bank.hpp"
#include "mband/cascade.hpp"
#include "mband/errors.hpp"
#include "mband/filters.hpp"
#include "mband/io.hpp"
#include "mband/transform.hpp"

namespace fs = std::filesystem;
using namespace mband;
using nlohmann::json;

namespace {

enum Exit { ok = 0, verify_failed = 1, usage = 2, io_failure = 3 };

struct Options {
  std::string family = "bspline";
  int n = 2;
  int degree = 1;
  int half_width = 32;
  std::string a0 = "unit";
  std::string output;
  bool exact_only = false;
  bool float_only = false;
  double tolerance = 1e-10;

  std::string bank;
  std::string signal;
  int column = 0;
  int levels = 1;
  std::string boundary = "periodic";
  bool pad = false;

  std::string input;
  std::string reference;

  std::string target;
  int channel = 1;
  int depth = 6;
  bool haar_start = false;
};

A0Completion parse_a0(const std::string& text) {
  if (text == "unit") return A0Completion::unit_rows();
  if (text == "orthogonal") return A0Completion::orthogonal_rows();
  if (text.rfind("file:", 0) == 0) return A0Completion::custom(read_rational_matrix(text.substr(5)));
  throw std::invalid_argument("--a0 must be unit, orthogonal or file:PATH");
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-")
    std::cout << text;
  else
    write_text(output, text);
}

std::string exact_tap_text(const Rational& r, int n) { return "(" + r.str() + ")/sqrt(" + std::to_string(n) + ")"; }

int cmd_filter(const Options& o) {
  const Family family = parse_family(o.family);
  Filter f;
  BankParameters params;
  switch (family) {
    case Family::haar: f = haar_filter(o.n); break;
    case Family::shannon:
      f = shannon_filter(o.n, o.half_width);
      params.half_width = o.half_width;
      break;
    case Family::bspline:
      f = bspline_filter(o.degree, o.n);
      params.degree = o.degree;
      break;
    case Family::custom: throw std::invalid_argument("filter: family must be haar, shannon or bspline");
  }
  std::cout << "# " << family_name(family) << " scaling filter, N = " << o.n << "\n";
  for (int i = 0; i < f.size(); ++i) {
    std::cout << "h[" << f.offset + i << "] = ";
    if (f.taps_exact && !o.float_only) std::cout << exact_tap_text((*f.taps_exact)[static_cast<std::size_t>(i)], o.n) << " = ";
    std::cout << format_double(f.taps[static_cast<std::size_t>(i)]) << "\n";
  }
  if (!o.output.empty()) write_text(o.output, scaling_filter_to_json(f, params).dump(2) + "\n");
  return ok;
}

int cmd_bank(const Options& o) {
  const Family family = parse_family(o.family);
  FilterBank bank;
  switch (family) {
    case Family::haar: bank = haar_bank(o.n); break;
    case Family::shannon: bank = shannon_bank(o.n, o.half_width); break;
    case Family::bspline: bank = bspline_bank(o.degree, o.n, parse_a0(o.a0)); break;
    case Family::custom: throw std::invalid_argument("bank: family must be haar, shannon or bspline");
  }
  emit(o.output, bank_to_json(bank).dump(2) + "\n");
  return ok;
}

int cmd_verify(const Options& o) {
  const FilterBank bank = read_bank(o.bank);
  if (o.exact_only && !bank.is_exact()) throw std::invalid_argument("verify --exact: bank has no exact taps");
  const PrReport r = verify_pr(bank, 256, o.tolerance);
  const int n = bank.dilation;

  bool pass = true;
  std::printf("bank: %s, N = %d, %s\n", family_name(bank.family), n, kind_name(bank.kind));
  if (!o.float_only) {
    if (r.exact_checked) {
      std::printf("exact: polyphase identity N S^T(w) A(1/w) = I: %s\n", r.exact_pass ? "holds" : "violated");
      std::printf("exact: distortion sum_i G_i(z) H_i(1/z) = %s\n", to_string(*r.distortion).c_str());
      for (int j = 0; j < n; ++j)
        std::printf("exact: phase term c_%d(z) = %s\n", j, to_string(r.phase_terms[static_cast<std::size_t>(j)]).c_str());
      pass = pass && r.exact_pass;
    } else {
      std::printf("exact: not available (no exact taps)\n");
    }
  }
  if (!o.exact_only) {
    std::printf("float: alias table, max |sum_i G_i(z) H_i(rho^-s / z) - delta_s| on the unit circle\n");
    for (int s = 0; s < n; ++s) std::printf("  s = %d  residual %.3e\n", s, r.alias_residuals[static_cast<std::size_t>(s)]);
    std::printf("float: max residual %.3e (tolerance %.1e)\n", r.float_residual, r.tolerance);
    pass = pass && r.float_pass;
  }
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? ok : verify_failed;
}

std::string level_file(int level, int channel) {
  return "level" + std::to_string(level) + "_detail" + std::to_string(channel) + ".txt";
}

int cmd_analyze(const Options& o) {
  if (o.output.empty()) throw std::invalid_argument("analyze: --output DIR is required");
  const FilterBank bank = read_bank(o.bank);
  const Signal x = read_signal(o.signal, o.column);
  const Boundary boundary = parse_boundary(o.boundary);
  const TransformPyramid p = analyze(x, bank, o.levels, boundary, o.pad);

  const fs::path dir = o.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  json manifest;
  manifest["N"] = p.dilation;
  manifest["levels"] = p.depth();
  manifest["boundary"] = boundary_name(boundary);
  manifest["signal_length"] = p.signal_length;
  manifest["bank"] = bank_to_json(bank);
  json levels = json::array();
  for (int l = 0; l < p.depth(); ++l) {
    const auto& level = p.levels[static_cast<std::size_t>(l)];
    json files = json::array();
    for (int i = 1; i < p.dilation; ++i) {
      const std::string name = level_file(l + 1, i);
      write_signal(dir / name, level.details[static_cast<std::size_t>(i - 1)]);
      files.push_back(name);
    }
    levels.push_back(json{{"input_length", level.input_length}, {"details", files}});
  }
  manifest["level_data"] = levels;
  manifest["approximation"] = "approximation.txt";
  write_signal(dir / "approximation.txt", p.levels.back().approximation);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  const Signal y = synthesize(p);
  const double err = (y - x).cwiseAbs().maxCoeff();
  std::printf("levels %d, coefficients %zu, round-trip max error %.3e\n", p.depth(), p.coefficient_count(), err);
  return ok;
}

TransformPyramid read_pyramid(const fs::path& manifest_path) {
  json m;
  try {
    m = json::parse(read_text(manifest_path));
  } catch (const json::parse_error& e) {
    throw ParseError("'" + manifest_path.string() + "': " + e.what());
  }
  const fs::path dir = manifest_path.parent_path();
  TransformPyramid p;
  try {
    p.bank = bank_from_json(m.at("bank"));
    p.dilation = m.at("N").get<int>();
    p.boundary = parse_boundary(m.at("boundary").get<std::string>());
    p.signal_length = m.at("signal_length").get<std::size_t>();
    for (const json& lj : m.at("level_data")) {
      TransformLevel level;
      level.input_length = lj.at("input_length").get<std::size_t>();
      for (const json& name : lj.at("details")) level.details.push_back(read_signal(dir / name.get<std::string>()));
      p.levels.push_back(std::move(level));
    }
    if (p.levels.empty()) throw ParseError("manifest has no levels");
    p.levels.back().approximation = read_signal(dir / m.at("approximation").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError("'" + manifest_path.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError("'" + manifest_path.string() + "': " + e.what());
  }
  return p;
}

int cmd_synthesize(const Options& o) {
  fs::path manifest = o.input;
  if (fs::is_directory(manifest)) manifest /= "manifest.json";
  const TransformPyramid p = read_pyramid(manifest);
  const Signal y = synthesize(p);
  if (o.output.empty()) {
    for (Eigen::Index i = 0; i < y.size(); ++i) std::cout << format_double(y[i]) << "\n";
  } else {
    write_signal(o.output, y);
  }
  if (!o.reference.empty()) {
    const Signal x = read_signal(o.reference, o.column);
    if (x.size() != y.size()) throw std::invalid_argument("synthesize: reference length differs from the output");
    std::fprintf(stderr, "max error vs reference %.3e\n", (y - x).cwiseAbs().maxCoeff());
  }
  return ok;
}

int cmd_render(const Options& o) {
  if (o.depth < 1) throw std::invalid_argument("render: --depth must be at least 1");
  const FilterBank bank = read_bank(o.bank);
  const CascadeStart start = o.haar_start ? CascadeStart::haar_indicator : CascadeStart::integer_samples;
  RenderedFunction f;
  if (o.target == "phi")
    f = cascade_render(bank.analysis[0], o.depth, start);
  else if (o.target == "psi")
    f = wavelet_render(bank, o.channel, o.depth, start);
  else
    throw std::invalid_argument("render: target must be phi or psi");
  std::string text;
  for (std::size_t i = 0; i < f.size(); ++i) text += format_double(f.x(i)) + " " + format_double(f.values[i]) + "\n";
  emit(o.output, text);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-band wavelet filter banks: construction, verification, transforms, rendering"};
  app.require_subcommand(1);
  Options o;

  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", o.family, "haar, shannon or bspline")->check(CLI::IsMember({"haar", "shannon", "bspline"}));
    c->add_option("--N", o.n, "dilation factor N >= 2");
    c->add_option("--degree", o.degree, "B-spline degree");
    c->add_option("--half-width", o.half_width, "Shannon truncation half-width");
  };

  auto* filter = app.add_subcommand("filter", "print a scaling filter");
  add_family(filter);
  filter->add_option("--output", o.output, "also write the filter record as JSON");
  filter->add_flag("--float", o.float_only, "print float taps only");
  filter->add_flag("--exact", o.exact_only, "print exact taps when available (default)");

  auto* bank = app.add_subcommand("bank", "build an analysis/synthesis bank");
  add_family(bank);
  bank->add_option("--a0", o.a0, "A0 completion: unit, orthogonal or file:PATH");
  bank->add_option("--output", o.output, "bank JSON file (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "check perfect reconstruction of a bank");
  verify->add_option("bank", o.bank, "bank JSON file")->required();
  auto* exact_flag = verify->add_flag("--exact", o.exact_only, "exact polyphase check only");
  verify->add_flag("--float", o.float_only, "unit-circle check only")->excludes(exact_flag);
  verify->add_option("--tolerance", o.tolerance, "float tolerance");

  auto* analyze_cmd = app.add_subcommand("analyze", "multi-level analysis of a signal");
  analyze_cmd->add_option("--bank", o.bank, "bank JSON file")->required();
  analyze_cmd->add_option("--signal", o.signal, "signal text file")->required();
  analyze_cmd->add_option("--column", o.column, "column of a multi-column signal file");
  analyze_cmd->add_option("--levels", o.levels, "number of levels");
  analyze_cmd->add_option("--boundary", o.boundary, "periodic or zero")->check(CLI::IsMember({"periodic", "zero"}));
  analyze_cmd->add_flag("--pad", o.pad, "zero-pad to a multiple of N^levels");
  analyze_cmd->add_option("--output", o.output, "output directory")->required();

  auto* synth = app.add_subcommand("synthesize", "reconstruct a signal from analyze output");
  synth->add_option("--input", o.input, "manifest.json or the analyze output directory")->required();
  synth->add_option("--output", o.output, "signal file (stdout if omitted)");
  synth->add_option("--reference", o.reference, "compare with this signal and print the max error");

  auto* render = app.add_subcommand("render", "sample phi or psi on an N-adic grid");
  render->add_option("target", o.target, "phi or psi")->required()->check(CLI::IsMember({"phi", "psi"}));
  render->add_option("--bank", o.bank, "bank JSON file")->required();
  render->add_option("--channel", o.channel, "wavelet channel 1..N-1");
  render->add_option("--depth", o.depth, "grid is N^-depth");
  render->add_flag("--haar-start", o.haar_start, "iterate from the indicator of [0,1)");
  render->add_option("--output", o.output, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*filter) return cmd_filter(o);
    if (*bank) return cmd_bank(o);
    if (*verify) return cmd_verify(o);
    if (*analyze_cmd) return cmd_analyze(o);
    if (*synth) return cmd_synthesize(o);
    if (*render) return cmd_render(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io_failure;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
