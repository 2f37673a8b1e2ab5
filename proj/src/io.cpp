#include "wpage/io.hpp"

#include <fstream>
#include <sstream>

namespace wpage {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

RequestSequence read_trace(const std::string& path, int universe_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<PageId> pages;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    pages.push_back(std::stoi(line));
  }
  return RequestSequence::of(std::move(pages), universe_hint);
}

void write_trace(const std::string& path, const RequestSequence& seq) {
  std::ostringstream ss;
  for (PageId p : seq.req) ss << p << "\n";
  write_file(path, ss.str());
}

WeightTable read_weights(const std::string& path, int min_universe) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<PageId, Rational>> entries;
  int universe = min_universe;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int page;
    std::string weight;
    if (!(ls >> page >> weight)) throw std::runtime_error("bad weights line: " + line);
    entries.push_back({page, Rational::parse(weight)});
    universe = std::max(universe, page + 1);
  }
  WeightTable t;
  t.w.assign((size_t)universe, Rational(1));
  for (auto& [page, weight] : entries) t.w[(size_t)page] = weight;
  t.validate();
  return t;
}

void write_weights(const std::string& path, const WeightTable& weights) {
  std::ostringstream ss;
  for (int p = 0; p < weights.universe(); p++) {
    const Rational& w = weights.at(p);
    ss << p << " ";
    // decimal when the denominator is a 10-smooth number, exact fraction otherwise
    long long d = w.den();
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d == 1 && w.den() > 1) {
      long long scale = 1;
      int digits = 0;
      while (scale % w.den() != 0) {
        scale *= 10;
        digits++;
      }
      long long scaled = w.num() * (scale / w.den());
      std::string body = std::to_string(scaled < 0 ? -scaled : scaled);
      while ((int)body.size() <= digits) body = "0" + body;
      body.insert(body.size() - (size_t)digits, ".");
      ss << (scaled < 0 ? "-" : "") << body;
    } else {
      ss << w.str();
    }
    ss << "\n";
  }
  write_file(path, ss.str());
}

void write_prp_annotation(const std::string& path, const PrpAnnotation& prp) {
  std::ostringstream ss;
  for (Time t = 1; t <= prp.horizon(); t++) ss << t << " " << prp.at(t) << "\n";
  write_file(path, ss.str());
}

}  // namespace wpage
