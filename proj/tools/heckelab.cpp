// heckelab: command line front end for the hecke library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/run.hpp"

namespace {

const std::map<std::string, std::string> kAbout = {
    {"field", "class group, reduced forms and character table"},
    {"coeffs", "coefficient table of one character, cached"},
    {"eval", "L and scaled Lambda at a list or range of heights"},
    {"scan", "sign changes of a combination on the critical line"},
    {"count", "argument-principle zero count in a rectangle"},
    {"moments", "mollified mean squares and their ratios"},
    {"clt", "histogram of the normalized log-ratio of a pair"},
    {"ssum", "quadruple sums, brute force and decomposed"},
};

bool write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << body;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke L-functions of imaginary quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  std::string config_path;
  app.add_option("--threads", threads, "worker threads (0: machine parallelism)");
  app.add_option("--config", config_path, "key = value file; flags override it")->check(CLI::ExistingFile);

  std::map<std::string, std::map<std::string, std::string>> given;
  std::map<std::string, std::map<std::string, bool>> switches;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : hecke::subcommands()) {
    CLI::App* sub = app.add_subcommand(name, kAbout.at(name));
    subs[name] = sub;
    for (const auto& knob : hecke::knobs(name)) {
      if (hecke::is_switch(knob))
        sub->add_flag("--" + knob, switches[name][knob], hecke::knob_help(knob));
      else
        sub->add_option("--" + knob, given[name][knob], hecke::knob_help(knob));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) name = n;

  std::map<std::string, std::string> flags;
  for (const auto& knob : hecke::knobs(name)) {
    if (subs[name]->count("--" + knob) == 0) continue;
    flags[knob] = hecke::is_switch(knob) ? (switches[name][knob] ? "true" : "false") : given[name][knob];
  }

  hecke::set_thread_count(threads);
  hecke::RunConfig cfg;
  try {
    cfg = hecke::make_config(name, flags, config_path);
    hecke::validate(cfg);
  } catch (const hecke::Error& e) {
    std::cerr << "heckelab " << name << ": " << e.what() << "\n";
    return 2;
  }

  hecke::RunOutput out = hecke::run(cfg);
  std::string text = hecke::canonical_json(out.envelope);
  int status = out.exit_code;
  if (cfg.has("out")) {
    if (!write_file(cfg.text("out"), text)) {
      std::cerr << "heckelab: cannot write " << cfg.text("out") << "\n";
      status = 1;
    }
  } else {
    std::cout << text;
  }
  for (const auto& f : out.files) {
    if (!write_file(f.path, f.body)) {
      std::cerr << "heckelab: cannot write " << f.path << "\n";
      status = 1;
    }
  }
  for (const auto& err : out.envelope["errors"]) std::cerr << "heckelab: " << err["message"].get<std::string>() << "\n";
  return status;
}
