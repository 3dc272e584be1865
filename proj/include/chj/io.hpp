#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chj/cauchy_fd.hpp"
#include "chj/fundamental.hpp"
#include "chj/grid_fn.hpp"
#include "chj/lax_oleinik.hpp"
#include "chj/longtime.hpp"

#include <json.hpp>

namespace chj {

// %.17g round-trips doubles and is locale-independent, so identical runs emit
// byte-identical files.
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_value(const ExtReal& v) { return v.is_inf() ? "inf" : fmt_double(v.v); }

// GridFn rows: x,value,is_infinite ('inf' literal in the value column).
inline std::string csv_gridfn(const GridFn& f) {
  std::string out = "x,value,is_infinite\n";
  for (int i = 0; i < f.n(); ++i) {
    out += fmt_double(f.torus.x(i));
    out += ',';
    out += fmt_value(f.values[i]);
    out += ',';
    out += f.values[i].is_inf() ? '1' : '0';
    out += '\n';
  }
  return out;
}

// Trajectory rows: t,x,value,is_infinite.
inline std::string csv_trajectory(const Trajectory& traj) {
  std::string out = "t,x,value,is_infinite\n";
  for (size_t s = 0; s < traj.slices.size(); ++s)
    for (int i = 0; i < traj.torus.n; ++i) {
      out += fmt_double(traj.times[s]);
      out += ',';
      out += fmt_double(traj.torus.x(i));
      out += ',';
      out += fmt_value(traj.slices[s].values[i]);
      out += ',';
      out += traj.slices[s].values[i].is_inf() ? '1' : '0';
      out += '\n';
    }
  return out;
}

inline std::string csv_htable(const HTable& tab) {
  std::string out = "t,x,value,is_infinite\n";
  for (size_t s = 0; s < tab.slices.size(); ++s)
    for (int i = 0; i < tab.torus.n; ++i) {
      out += fmt_double(tab.times[s]);
      out += ',';
      out += fmt_double(tab.torus.x(i));
      out += ',';
      out += fmt_value(tab.slices[s].values[i]);
      out += ',';
      out += tab.slices[s].values[i].is_inf() ? '1' : '0';
      out += '\n';
    }
  return out;
}

// Curve rows: step,t,x.
inline std::string csv_curve(const Curve& c, const Torus& torus) {
  std::string out = "step,t,x\n";
  for (size_t s = 0; s < c.nodes.size(); ++s) {
    out += std::to_string(s);
    out += ',';
    out += fmt_double(c.times[s]);
    out += ',';
    out += fmt_double(torus.x(c.nodes[s]));
    out += '\n';
  }
  return out;
}

inline nlohmann::json json_gridfn(const GridFn& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < f.n(); ++i) {
    nlohmann::json row;
    row["x"] = f.torus.x(i);
    if (f.values[i].is_inf())
      row["value"] = "inf";
    else
      row["value"] = f.values[i].value();
    row["is_infinite"] = f.values[i].is_inf();
    arr.push_back(row);
  }
  return arr;
}

inline nlohmann::json json_class_report(const ClassReport& rep,
                                        const std::vector<std::string>& artifact_refs = {}) {
  nlohmann::json j;
  j["n_stationary_clusters"] = rep.n_stationary_clusters;
  j["n_images"] = rep.n_images;
  j["order_ok"] = rep.order_ok;
  j["clusters"] = nlohmann::json::array();
  for (int c = 0; c < rep.n_stationary_clusters; ++c) {
    nlohmann::json jc;
    jc["id"] = c;
    jc["member_seeds"] = rep.cluster_seeds[c];
    jc["class"] = rep.class_of_cluster[c];
    if (c < (int)artifact_refs.size()) jc["center_csv"] = artifact_refs[c];
    j["clusters"].push_back(jc);
  }
  j["excluded_seeds"] = nlohmann::json::array();
  for (size_t i = 0; i < rep.excluded_seeds.size(); ++i) {
    nlohmann::json je;
    je["seed"] = rep.excluded_seeds[i];
    je["reason"] = rep.exclusion_notes[i];
    j["excluded_seeds"].push_back(je);
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace chj
