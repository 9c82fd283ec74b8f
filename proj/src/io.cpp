#include "chronoshed/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "chronoshed/errors.hpp"
#include "chronoshed/instances.hpp"

namespace chronoshed {

namespace {

long long big_to_ll(const BigInt& v, const std::string& where) {
    if (v > BigInt(std::numeric_limits<long long>::max()) ||
        v < BigInt(std::numeric_limits<long long>::min()))
        throw SchemaError(where + ": rational component exceeds 64-bit range");
    return static_cast<long long>(v);
}

}  // namespace

Json rat_to_json(const Rat& v) {
    // cpp_rational keeps values in lowest terms with positive denominator
    return Json::array({big_to_ll(rat_num(v), "write"), big_to_ll(rat_den(v), "write")});
}

Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        long long num = j[0].get<long long>();
        long long den = j[1].get<long long>();
        if (den == 0) throw SchemaError(where + ": zero denominator");
        return Rat(BigInt(num), BigInt(den));
    }
    throw SchemaError(where + ": expected integer or [num, den] pair");
}

namespace {

Json jobs_to_json(const std::vector<Job>& jobs) {
    Json arr = Json::array();
    for (const Job& job : jobs) {
        Json o;
        o["id"] = job.id;
        o["r"] = rat_to_json(job.r);
        o["d"] = rat_to_json(job.d);
        o["p"] = rat_to_json(job.p);
        arr.push_back(std::move(o));
    }
    return arr;
}

std::vector<Job> jobs_from_json(const Json& doc) {
    if (!doc.contains("jobs") || !doc["jobs"].is_array())
        throw SchemaError("instance: missing \"jobs\" array");
    std::vector<Job> jobs;
    int pos = 0;
    for (const Json& o : doc["jobs"]) {
        std::string where = "jobs[" + std::to_string(pos) + "]";
        if (!o.is_object()) throw SchemaError(where + ": expected object");
        if (!o.contains("id") || !o["id"].is_string())
            throw SchemaError(where + ": missing string \"id\"");
        Job job;
        job.id = o["id"].get<std::string>();
        where = "job \"" + job.id + "\"";
        for (const char* key : {"r", "d", "p"})
            if (!o.contains(key))
                throw SchemaError(where + ": missing \"" + std::string(key) + "\"");
        job.r = rat_from_json(o["r"], where + ".r");
        job.d = rat_from_json(o["d"], where + ".d");
        job.p = rat_from_json(o["p"], where + ".p");
        jobs.push_back(std::move(job));
        ++pos;
    }
    return jobs;
}

}  // namespace

Json instance_to_json(const ActiveInstance& inst) {
    Json doc;
    doc["kind"] = "active";
    doc["g"] = inst.g;
    doc["jobs"] = jobs_to_json(inst.jobs);
    return doc;
}

Json instance_to_json(const BusyInstance& inst) {
    Json doc;
    doc["kind"] = "busy";
    if (inst.g)
        doc["g"] = *inst.g;
    else
        doc["g"] = "inf";
    doc["jobs"] = jobs_to_json(inst.jobs);
    return doc;
}

AnyInstance instance_from_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("instance: expected JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw SchemaError("instance: missing string \"kind\"");
    std::string kind = doc["kind"].get<std::string>();
    std::vector<Job> jobs = jobs_from_json(doc);
    if (!doc.contains("g")) throw SchemaError("instance: missing \"g\"");
    const Json& gj = doc["g"];
    if (kind == "active") {
        if (!gj.is_number_integer()) throw SchemaError("active instance: \"g\" must be an integer");
        long long g = gj.get<long long>();
        if (g < 1) throw SchemaError("active instance: \"g\" must be positive");
        return make_active(static_cast<int>(g), std::move(jobs));
    }
    if (kind == "busy") {
        std::optional<int> g;
        if (gj.is_string() && gj.get<std::string>() == "inf")
            g = std::nullopt;
        else if (gj.is_number_integer() && gj.get<long long>() >= 1)
            g = static_cast<int>(gj.get<long long>());
        else
            throw SchemaError("busy instance: \"g\" must be a positive integer or \"inf\"");
        return make_busy(g, std::move(jobs));
    }
    throw SchemaError("instance: unknown kind \"" + kind + "\"");
}

std::string canonical_dump(const Json& doc) {
    // nlohmann's default json orders object keys lexicographically, which is
    // exactly the canonical form
    return doc.dump(2) + "\n";
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw SchemaError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json schedule_to_json(const ActiveSchedule& s) {
    Json doc;
    doc["type"] = "active";
    doc["active_slots"] = s.active_slots;
    Json asg;
    for (const auto& [id, slots] : s.assignment) asg[id] = slots;
    doc["assignment"] = std::move(asg);
    return doc;
}

namespace {

Json interval_to_json(const TimeInterval& iv) {
    return Json::array({rat_to_json(iv.start), rat_to_json(iv.end)});
}

Json intervals_to_json(const std::vector<TimeInterval>& ivs) {
    Json arr = Json::array();
    for (const TimeInterval& iv : ivs) arr.push_back(interval_to_json(iv));
    return arr;
}

TimeInterval interval_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError(where + ": expected [start, end] pair");
    return TimeInterval{rat_from_json(j[0], where + ".start"), rat_from_json(j[1], where + ".end")};
}

}  // namespace

Json schedule_to_json(const BusyInstance& inst,
                      const std::vector<std::vector<std::size_t>>& bundles,
                      const std::vector<TimeInterval>& placement, const Rat& cost) {
    Json doc;
    doc["type"] = "busy";
    doc["cost"] = rat_to_json(cost);
    Json barr = Json::array();
    for (const auto& machine : bundles) {
        Json jobs = Json::array();
        for (std::size_t j : machine) jobs.push_back(inst.jobs.at(j).id);
        barr.push_back(std::move(jobs));
    }
    doc["bundles"] = std::move(barr);
    Json pl;
    for (std::size_t j = 0; j < placement.size(); ++j)
        pl[inst.jobs.at(j).id] = interval_to_json(placement[j]);
    doc["placement"] = std::move(pl);
    return doc;
}

Json schedule_to_json(const BusyInstance& inst, const PreemptiveSchedule& s) {
    Json doc;
    doc["type"] = "preemptive";
    Json pieces;
    for (std::size_t j = 0; j < s.pieces.size(); ++j)
        pieces[inst.jobs.at(j).id] = intervals_to_json(s.pieces[j]);
    doc["pieces"] = std::move(pieces);
    doc["cover"] = intervals_to_json(s.cover);
    doc["cost"] = rat_to_json(s.cost);
    return doc;
}

Json schedule_to_json(const BusyInstance& inst, const BoundedPreemptiveSchedule& s) {
    Json doc = schedule_to_json(inst, s.base);
    doc["type"] = "preemptive_bounded";
    doc["cost"] = rat_to_json(s.cost);
    Json segs = Json::array();
    for (const auto& seg : s.segments) {
        Json sj;
        sj["interval"] = interval_to_json(seg.interval);
        Json groups = Json::array();
        for (const auto& grp : seg.groups) {
            Json ids = Json::array();
            for (std::size_t j : grp) ids.push_back(inst.jobs.at(j).id);
            groups.push_back(std::move(ids));
        }
        sj["groups"] = std::move(groups);
        segs.push_back(std::move(sj));
    }
    doc["segments"] = std::move(segs);
    return doc;
}

ScheduleDoc schedule_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw SchemaError("schedule: missing string \"type\"");
    ScheduleDoc out;
    out.type = doc["type"].get<std::string>();
    if (out.type == "active") {
        if (!doc.contains("active_slots") || !doc["active_slots"].is_array())
            throw SchemaError("schedule: missing \"active_slots\"");
        for (const Json& t : doc["active_slots"]) {
            if (!t.is_number_integer()) throw SchemaError("schedule: active slot must be integer");
            out.active.active_slots.insert(t.get<int>());
        }
        if (!doc.contains("assignment") || !doc["assignment"].is_object())
            throw SchemaError("schedule: missing \"assignment\"");
        for (const auto& [id, slots] : doc["assignment"].items()) {
            if (!slots.is_array()) throw SchemaError("schedule: assignment of \"" + id + "\" must be an array");
            std::vector<int> v;
            for (const Json& t : slots) {
                if (!t.is_number_integer())
                    throw SchemaError("schedule: slot of \"" + id + "\" must be integer");
                v.push_back(t.get<int>());
            }
            out.active.assignment[id] = std::move(v);
        }
        return out;
    }
    if (out.type == "busy") {
        if (!doc.contains("bundles") || !doc["bundles"].is_array())
            throw SchemaError("schedule: missing \"bundles\"");
        if (!doc.contains("placement") || !doc["placement"].is_object())
            throw SchemaError("schedule: missing \"placement\"");
        for (const auto& [id, iv] : doc["placement"].items())
            out.placement.emplace(id, interval_from_json(iv, "placement of \"" + id + "\""));
        int pos = 0;
        for (const Json& bj : doc["bundles"]) {
            std::string where = "bundles[" + std::to_string(pos) + "]";
            if (!bj.is_array()) throw SchemaError(where + ": expected array of job ids");
            std::vector<std::string> machine;
            for (const Json& id : bj) {
                if (!id.is_string()) throw SchemaError(where + ": job id must be a string");
                machine.push_back(id.get<std::string>());
            }
            out.bundles.push_back(std::move(machine));
            ++pos;
        }
        if (!doc.contains("cost")) throw SchemaError("schedule: missing \"cost\"");
        out.cost = rat_from_json(doc["cost"], "cost");
        return out;
    }
    if (out.type == "preemptive" || out.type == "preemptive_bounded") {
        if (!doc.contains("pieces") || !doc["pieces"].is_object())
            throw SchemaError("schedule: missing \"pieces\"");
        for (const auto& [id, arr] : doc["pieces"].items()) {
            if (!arr.is_array()) throw SchemaError("schedule: pieces of \"" + id + "\" must be an array");
            std::vector<TimeInterval> ivs;
            for (const Json& iv : arr) ivs.push_back(interval_from_json(iv, "pieces of \"" + id + "\""));
            out.pieces.emplace(id, std::move(ivs));
        }
        if (!doc.contains("cover") || !doc["cover"].is_array())
            throw SchemaError("schedule: missing \"cover\"");
        for (const Json& iv : doc["cover"]) out.cover.push_back(interval_from_json(iv, "cover"));
        if (!doc.contains("cost")) throw SchemaError("schedule: missing \"cost\"");
        out.cost = rat_from_json(doc["cost"], "cost");
        if (out.type == "preemptive_bounded") {
            if (!doc.contains("segments") || !doc["segments"].is_array())
                throw SchemaError("schedule: missing \"segments\"");
            for (const Json& sj : doc["segments"]) {
                if (!sj.is_object() || !sj.contains("interval") || !sj.contains("groups"))
                    throw SchemaError("schedule: segment needs \"interval\" and \"groups\"");
                ScheduleDoc::SegmentDoc seg;
                seg.interval = interval_from_json(sj["interval"], "segment interval");
                for (const Json& grp : sj["groups"]) {
                    if (!grp.is_array()) throw SchemaError("schedule: segment group must be an array");
                    std::vector<std::string> ids;
                    for (const Json& id : grp) {
                        if (!id.is_string()) throw SchemaError("schedule: group job id must be a string");
                        ids.push_back(id.get<std::string>());
                    }
                    seg.groups.push_back(std::move(ids));
                }
                out.segments.push_back(std::move(seg));
            }
        }
        return out;
    }
    throw SchemaError("schedule: unknown type \"" + out.type + "\"");
}

namespace {

std::size_t index_of(const BusyInstance& inst, const std::string& id) {
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        if (inst.jobs[j].id == id) return j;
    throw InvariantViolation("schedule references unknown job \"" + id + "\"");
}

} // namespace

std::optional<std::string> validate_document(const AnyInstance& inst, const ScheduleDoc& doc) {
    if (doc.type == "active") {
        if (!std::holds_alternative<ActiveInstance>(inst))
            throw SchemaError("an active schedule needs an instance of kind \"active\"");
        return validate_active_schedule(std::get<ActiveInstance>(inst), doc.active);
    }
    if (!std::holds_alternative<BusyInstance>(inst))
        throw SchemaError("a " + doc.type + " schedule needs an instance of kind \"busy\"");
    const auto& b = std::get<BusyInstance>(inst);

    if (doc.type == "busy") {
        std::vector<std::vector<std::size_t>> bundles;
        for (const auto& ids : doc.bundles) {
            std::vector<std::size_t> bundle;
            for (const auto& id : ids) bundle.push_back(index_of(b, id));
            bundles.push_back(std::move(bundle));
        }
        std::vector<TimeInterval> placement;
        for (const auto& j : b.jobs) {
            auto it = doc.placement.find(j.id);
            if (it == doc.placement.end()) return "no placement for job \"" + j.id + "\"";
            placement.push_back(it->second);
        }
        return validate_bundles(b, bundles, placement, doc.cost);
    }

    PreemptiveSchedule base;
    base.pieces.resize(b.jobs.size());
    for (const auto& [id, pieces] : doc.pieces) base.pieces[index_of(b, id)] = pieces;
    base.cover = doc.cover;
    for (const auto& iv : doc.cover) base.cost += iv.length();
    if (doc.type == "preemptive") {
        base.cost = doc.cost; // claimed; the validator recomputes the cover measure
        return validate_preemptive(b, base);
    }
    // preemptive_bounded: the claimed cost is the machine-weighted one
    BoundedPreemptiveSchedule sched;
    sched.base = std::move(base);
    for (const auto& s : doc.segments) {
        BoundedPreemptiveSchedule::Segment seg;
        seg.interval = s.interval;
        for (const auto& ids : s.groups) {
            std::vector<std::size_t> group;
            for (const auto& id : ids) group.push_back(index_of(b, id));
            seg.groups.push_back(std::move(group));
        }
        sched.segments.push_back(std::move(seg));
    }
    sched.cost = doc.cost;
    return validate_bounded_preemptive(b, sched);
}

Json fixture_instance_json(const Fixture& fx) {
    if (std::holds_alternative<ActiveInstance>(fx.instance))
        return instance_to_json(std::get<ActiveInstance>(fx.instance));
    return instance_to_json(std::get<BusyInstance>(fx.instance));
}

Json fixture_metadata_json(const Fixture& fx) {
    Json meta{{"name", fx.name}};
    meta["optimum"] = fx.optimum ? rat_to_json(*fx.optimum) : Json(nullptr);
    meta["lp_optimum"] = fx.lp_optimum ? rat_to_json(*fx.lp_optimum) : Json(nullptr);
    meta["adversarial_cost"] =
        fx.adversarial_cost ? rat_to_json(*fx.adversarial_cost) : Json(nullptr);
    if (!fx.adversarial_order.empty()) meta["adversarial_order"] = fx.adversarial_order;
    return meta;
}

}  // namespace chronoshed
