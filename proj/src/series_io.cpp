#include "pointmass/series_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pointmass {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  if (first < last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  auto in = open_in(path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected " << t.header.size() << " columns, got " << cells.size();
      throw std::runtime_error(os.str());
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_series_row(std::ostream& os, const SeriesRow& r) {
  os << format_number(r.t) << ',' << format_number(r.V) << ',' << format_number(r.u_inf) << ','
     << format_number(r.mass) << ',' << format_number(r.momentum) << ',' << format_number(r.energy_plus_dissipation)
     << '\n';
}

void write_series(const std::string& path, const std::vector<SeriesRow>& rows) {
  auto out = open_out(path);
  out << kSeriesHeader << '\n';
  for (const auto& r : rows) write_series_row(out, r);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<SeriesRow> read_series(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::ostringstream hdr;
  for (std::size_t k = 0; k < t.header.size(); ++k) hdr << (k ? "," : "") << t.header[k];
  if (hdr.str() != kSeriesHeader) throw std::runtime_error("'" + path + "' does not have the series header");
  std::vector<SeriesRow> rows;
  rows.reserve(t.rows.size());
  for (const auto& c : t.rows) {
    rows.push_back({parse_number(c[0]), parse_number(c[1]), parse_number(c[2]), parse_number(c[3]),
                    parse_number(c[4]), parse_number(c[5])});
  }
  return rows;
}

std::string snapshot_filename(double t) { return "snap_t" + format_number(t) + ".csv"; }

void write_snapshot(const std::string& path, const Snapshot& s) {
  auto out = open_out(path);
  out << kSnapshotHeader << '\n';
  for (Eigen::Index k = 0; k < s.x.size(); ++k)
    out << format_number(s.x(k)) << ',' << format_number(s.tau(k)) << ',' << format_number(s.u(k)) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.header.size() != 3 || t.header[0] != "x" || t.header[1] != "tau" || t.header[2] != "u")
    throw std::runtime_error("'" + path + "' does not have the snapshot header");
  Snapshot s;
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  s.x.resize(n);
  s.tau.resize(n);
  s.u.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.x(k) = parse_number(t.rows[k][0]);
    s.tau(k) = parse_number(t.rows[k][1]);
    s.u(k) = parse_number(t.rows[k][2]);
  }
  const std::string name = std::filesystem::path(path).filename().string();
  if (name.rfind("snap_t", 0) == 0 && name.size() > 10 && name.substr(name.size() - 4) == ".csv")
    s.t = parse_number(name.substr(6, name.size() - 10));
  return s;
}

}  // namespace pointmass
