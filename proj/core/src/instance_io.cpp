#include "mecsched/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mecsched/errors.hpp"

namespace mecsched {

using json = nlohmann::ordered_json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

// Field access with the path of the offending value in every error.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ParseError(path_or_root() + ": expected an object");
  }

  void reject_unknown(std::initializer_list<const char*> allowed) const {
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!names.count(it.key())) throw ParseError(field_path(it.key()) + ": unknown field");
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  const json& at(const char* key) const {
    if (!node_.contains(key)) throw ParseError(field_path(key) + ": missing required field");
    return node_.at(key);
  }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ParseError(field_path(key) + ": expected a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_integer(const char* key) const {
    const json& v = at(key);
    if (!v.is_number_unsigned()) throw ParseError(field_path(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ParseError(field_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::string field_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string path_or_root() const { return path_.empty() ? "<root>" : path_; }

  const json& node_;
  std::string path_;
};

json user_to_json(const UserProfile& u) {
  return {{"id", u.id},
          {"weight", u.weight},
          {"uplink_time_per_bit", u.uplink_time_per_bit},
          {"downlink_time_per_bit", u.downlink_time_per_bit},
          {"output_ratio", u.output_ratio},
          {"service_rate", u.service_rate},
          {"task_bits", u.task_bits},
          {"cycles_per_bit", u.cycles_per_bit},
          {"cpu_freq", u.cpu_freq},
          {"energy_coeff", u.energy_coeff},
          {"tx_power", u.tx_power}};
}

UserProfile user_from_json(const json& node, const std::string& path) {
  Reader r(node, path);
  r.reject_unknown({"id", "weight", "uplink_time_per_bit", "downlink_time_per_bit", "output_ratio",
                    "service_rate", "task_bits", "cycles_per_bit", "cpu_freq", "energy_coeff",
                    "tx_power"});
  UserProfile u;
  u.id = r.unsigned_integer("id");
  u.weight = r.number("weight");
  u.uplink_time_per_bit = r.number("uplink_time_per_bit");
  u.downlink_time_per_bit = r.number("downlink_time_per_bit");
  u.output_ratio = r.number("output_ratio");
  u.service_rate = r.number("service_rate");
  u.task_bits = r.number("task_bits");
  u.cycles_per_bit = r.number("cycles_per_bit");
  u.cpu_freq = r.number("cpu_freq");
  u.energy_coeff = r.number("energy_coeff");
  u.tx_power = r.number("tx_power");
  return u;
}

json range_to_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from_json(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw ParseError(path + ": expected [min, max]");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

UserSet set_from_json(const json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path + ": expected an array of user ids");
  UserSet out;
  for (const json& v : node) {
    if (!v.is_number_unsigned()) throw ParseError(path + ": user ids must be non-negative integers");
    out.push_back(v.get<UserId>());
  }
  return out;
}

std::vector<double> bits_from_json(const json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (const json& v : node) {
    if (!v.is_number()) throw ParseError(path + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["deadline_s"] = instance.deadline;
  doc["degradation"] = instance.degradation;
  doc["users"] = json::array();
  for (const UserProfile& u : instance.users) doc["users"].push_back(user_to_json(u));
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json doc = parse_document(text);
  Reader r(doc, "");
  r.reject_unknown({"deadline_s", "degradation", "users"});
  Instance instance;
  instance.deadline = r.number("deadline_s");
  instance.degradation = r.number("degradation");
  const json& users = r.at("users");
  if (!users.is_array()) throw ParseError("users: expected an array");
  for (std::size_t i = 0; i < users.size(); ++i) {
    instance.users.push_back(user_from_json(users[i], "users[" + std::to_string(i) + "]"));
  }
  check_instance(instance);
  return instance;
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_text_file(path)); }

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(instance));
}

std::string generation_spec_to_json(const GenerationSpec& s) {
  json doc;
  doc["users"] = s.users;
  doc["deadline_s"] = s.deadline_s;
  doc["degradation"] = s.degradation;
  doc["uplink_mbps"] = range_to_json(s.uplink_mbps);
  doc["downlink_mbps"] = range_to_json(s.downlink_mbps);
  doc["service_rate_bps"] = range_to_json(s.service_rate_bps);
  doc["output_ratio_exponent"] = range_to_json(s.output_ratio_exponent);
  doc["task_kb"] = range_to_json(s.task_kb);
  doc["cycles_per_bit"] = range_to_json(s.cycles_per_bit);
  doc["cpu_freq_hz"] = range_to_json(s.cpu_freq_hz);
  doc["energy_coeff"] = range_to_json(s.energy_coeff);
  doc["tx_power_w"] = range_to_json(s.tx_power_w);
  doc["weight"] = range_to_json(s.weight);
  return doc.dump(2) + "\n";
}

GenerationSpec generation_spec_from_json(const std::string& text) {
  const json doc = parse_document(text);
  Reader r(doc, "");
  r.reject_unknown({"users", "deadline_s", "degradation", "uplink_mbps", "downlink_mbps",
                    "service_rate_bps", "output_ratio_exponent", "task_kb", "cycles_per_bit",
                    "cpu_freq_hz", "energy_coeff", "tx_power_w", "weight"});
  GenerationSpec s;
  if (r.has("users")) s.users = r.unsigned_integer("users");
  if (r.has("deadline_s")) s.deadline_s = r.number("deadline_s");
  if (r.has("degradation")) s.degradation = r.number("degradation");
  const auto range = [&](const char* key, Range& out) {
    if (r.has(key)) out = range_from_json(r.at(key), key);
  };
  range("uplink_mbps", s.uplink_mbps);
  range("downlink_mbps", s.downlink_mbps);
  range("service_rate_bps", s.service_rate_bps);
  range("output_ratio_exponent", s.output_ratio_exponent);
  range("task_kb", s.task_kb);
  range("cycles_per_bit", s.cycles_per_bit);
  range("cpu_freq_hz", s.cpu_freq_hz);
  range("energy_coeff", s.energy_coeff);
  range("tx_power_w", s.tx_power_w);
  range("weight", s.weight);
  check_generation_spec(s);
  return s;
}

std::string rate_schedule_to_json(const RateSchedule& s) {
  json doc;
  doc["kind"] = "rate";
  doc["scheduled"] = s.scheduled;
  doc["offload_bits"] = s.offload_bits;
  doc["compute_time_s"] = s.compute_time;
  doc["sum_rate_bps"] = s.sum_rate;
  return doc.dump(2) + "\n";
}

std::string energy_schedule_to_json(const EnergySchedule& s) {
  json doc;
  doc["kind"] = "energy";
  doc["status"] = to_string(s.status);
  doc["scheduled"] = s.scheduled;
  doc["offload_bits"] = s.offload_bits;
  doc["compute_time_s"] = s.compute_time;
  doc["objective_j"] = s.objective;
  doc["total_energy_j"] = s.total_energy;
  if (s.tmin) doc["tmin_s"] = *s.tmin;
  return doc.dump(2) + "\n";
}

AnySchedule schedule_from_json(const std::string& text) {
  const json doc = parse_document(text);
  Reader r(doc, "");
  const std::string kind = r.string("kind");
  if (kind == "rate") {
    r.reject_unknown({"kind", "scheduled", "offload_bits", "compute_time_s", "sum_rate_bps"});
    RateSchedule s;
    s.scheduled = set_from_json(r.at("scheduled"), "scheduled");
    s.offload_bits = bits_from_json(r.at("offload_bits"), "offload_bits");
    s.compute_time = r.number("compute_time_s");
    s.sum_rate = r.number("sum_rate_bps");
    return s;
  }
  if (kind == "energy") {
    r.reject_unknown({"kind", "status", "scheduled", "offload_bits", "compute_time_s", "objective_j",
                      "total_energy_j", "tmin_s"});
    EnergySchedule s;
    s.status = energy_status_from_string(r.string("status"));
    s.scheduled = set_from_json(r.at("scheduled"), "scheduled");
    s.offload_bits = bits_from_json(r.at("offload_bits"), "offload_bits");
    s.compute_time = r.number("compute_time_s");
    s.objective = r.number("objective_j");
    s.total_energy = r.number("total_energy_j");
    if (r.has("tmin_s")) s.tmin = r.number("tmin_s");
    return s;
  }
  throw ParseError("kind: expected \"rate\" or \"energy\", got \"" + kind + "\"");
}

AnySchedule read_schedule(const std::filesystem::path& path) { return schedule_from_json(read_text_file(path)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw ConfigError(path.string() + ": write failed");
}

}  // namespace mecsched
