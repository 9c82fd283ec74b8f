#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"

#include "chronoshed/active.hpp"
#include "chronoshed/busy.hpp"
#include "chronoshed/job.hpp"

namespace chronoshed {

using Json = nlohmann::json;

// ---- rationals ------------------------------------------------------------
// Canonical form is always a two-element [num, den] array in lowest terms.
// Readers also accept plain integers.
Json rat_to_json(const Rat& v);
Rat rat_from_json(const Json& j, const std::string& where);

// ---- instances ------------------------------------------------------------
// Document shape: {"g": int|"inf", "jobs": [{"d":…, "id":…, "p":…, "r":…}], "kind": "active"|"busy"}
Json instance_to_json(const ActiveInstance& inst);
Json instance_to_json(const BusyInstance& inst);
AnyInstance instance_from_json(const Json& doc);

// Serialize with sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& doc);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// ---- schedules ------------------------------------------------------------
// In-memory schedules refer to jobs by index; documents use job ids, so
// serialization needs the instance for the mapping.
Json schedule_to_json(const ActiveSchedule& s);
Json schedule_to_json(const BusyInstance& inst,
                      const std::vector<std::vector<std::size_t>>& bundles,
                      const std::vector<TimeInterval>& placement, const Rat& cost);
Json schedule_to_json(const BusyInstance& inst, const PreemptiveSchedule& s);
Json schedule_to_json(const BusyInstance& inst, const BoundedPreemptiveSchedule& s);

struct ScheduleDoc {
    std::string type;  // "active" | "busy" | "preemptive" | "preemptive_bounded"
    // active
    ActiveSchedule active;
    // busy
    std::vector<std::vector<std::string>> bundles;         // job ids per machine
    std::map<std::string, TimeInterval> placement;         // id -> placed interval
    // preemptive (+ bounded)
    std::map<std::string, std::vector<TimeInterval>> pieces;
    std::vector<TimeInterval> cover;
    struct SegmentDoc {
        TimeInterval interval;
        std::vector<std::vector<std::string>> groups;      // job ids per machine
    };
    std::vector<SegmentDoc> segments;                      // preemptive_bounded only
    Rat cost;                                              // claimed cost (busy/preemptive)
};

ScheduleDoc schedule_from_json(const Json& doc);

// Map the document's job ids back onto the instance and run the matching
// counting validator. Returns the first violation found, nullopt when clean.
// Throws SchemaError when the document type does not fit the instance kind.
std::optional<std::string> validate_document(const AnyInstance& inst, const ScheduleDoc& doc);

// Fixture serialization: the instance document plus a ground-truth metadata
// document (known optima, adversarial order) kept separate from the instance.
struct Fixture;
Json fixture_instance_json(const Fixture& fx);
Json fixture_metadata_json(const Fixture& fx);

}  // namespace chronoshed
