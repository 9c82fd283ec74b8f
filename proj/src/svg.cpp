#include "chronoshed/svg.hpp"

#include <algorithm>
#include <sstream>

namespace chronoshed {

namespace {

constexpr double kRow = 22.0;
constexpr double kTop = 30.0;
constexpr double kLeft = 70.0;
constexpr double kBottom = 14.0;

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                          "#76b7b2", "#edc948", "#9c755f", "#bab0ac", "#d37295"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Canvas {
    std::ostringstream body;
    double width = 0, height = 0;
    double t0 = 0, t1 = 1; // time range mapped onto the horizontal axis
    double unit = 40.0;    // pixels per time unit

    double xpos(double t) const { return kLeft + (t - t0) * unit; }

    void open(double tmin, double tmax, int rows) {
        t0 = tmin;
        t1 = tmax > tmin ? tmax : tmin + 1;
        double span = t1 - t0;
        unit = std::max(12.0, std::min(60.0, 640.0 / span));
        width = kLeft + span * unit + 20.0;
        height = kTop + rows * kRow + kBottom;
    }

    void grid() {
        for (long t = static_cast<long>(t0); t <= static_cast<long>(t1); ++t) {
            body << "<line x1='" << xpos(t) << "' y1='" << kTop - 6 << "' x2='" << xpos(t)
                 << "' y2='" << height - kBottom << "' stroke='#ddd' stroke-width='1'/>\n";
            body << "<text x='" << xpos(t) << "' y='" << kTop - 10
                 << "' font-size='10' text-anchor='middle' fill='#555'>" << t << "</text>\n";
        }
    }

    void band(double a, double b, const char* color) {
        body << "<rect x='" << xpos(a) << "' y='" << kTop << "' width='" << (b - a) * unit
             << "' height='" << height - kTop - kBottom << "' fill='" << color << "'/>\n";
    }

    void row_label(int row, const std::string& text) {
        body << "<text x='" << kLeft - 6 << "' y='" << kTop + row * kRow + kRow * 0.7
             << "' font-size='11' text-anchor='end' fill='#222'>" << esc(text) << "</text>\n";
    }

    void bar(int row, double a, double b, const char* fill, const std::string& title) {
        body << "<rect x='" << xpos(a) << "' y='" << kTop + row * kRow + 3 << "' width='"
             << (b - a) * unit << "' height='" << kRow - 6 << "' fill='" << fill
             << "' stroke='#333' stroke-width='0.5'><title>" << esc(title) << "</title></rect>\n";
    }

    std::string finish() {
        std::ostringstream out;
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
            << height << "' viewBox='0 0 " << width << " " << height << "'>\n"
            << "<rect width='100%' height='100%' fill='white'/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

} // namespace

std::string svg_active(const ActiveInstance& inst, const ActiveSchedule& sched) {
    Canvas c;
    c.open(0, inst.T, static_cast<int>(inst.jobs.size()));
    for (int t : sched.active_slots) c.band(t - 1, t, "#fdf3d8");
    c.grid();
    int row = 0;
    for (const Job& j : inst.jobs) {
        c.row_label(row, j.id);
        // window outline
        c.body << "<rect x='" << c.xpos(rat_double(j.r)) << "' y='" << kTop + row * kRow + 3
               << "' width='" << (rat_double(j.d) - rat_double(j.r)) * c.unit << "' height='"
               << kRow - 6 << "' fill='none' stroke='#999' stroke-dasharray='3,2'/>\n";
        auto it = sched.assignment.find(j.id);
        if (it != sched.assignment.end())
            for (int t : it->second)
                c.bar(row, t - 1, t, kPalette[row % 10], j.id + " @ slot " + std::to_string(t));
        ++row;
    }
    return c.finish();
}

std::string svg_busy(const BusyInstance& inst,
                     const std::vector<std::vector<std::size_t>>& bundles,
                     const std::vector<TimeInterval>& placement) {
    double tmin = 0, tmax = 1;
    for (const Job& j : inst.jobs) {
        tmin = std::min(tmin, rat_double(j.r));
        tmax = std::max(tmax, rat_double(j.d));
    }
    Canvas c;
    c.open(tmin, tmax, static_cast<int>(bundles.size()));
    c.grid();
    for (std::size_t m = 0; m < bundles.size(); ++m) {
        c.row_label(static_cast<int>(m), "machine " + std::to_string(m + 1));
        for (std::size_t j : bundles[m]) {
            const TimeInterval& iv = placement.at(j);
            c.bar(static_cast<int>(m), rat_double(iv.start), rat_double(iv.end),
                  kPalette[j % 10], inst.jobs[j].id);
        }
    }
    return c.finish();
}

std::string svg_preemptive(const BusyInstance& inst, const PreemptiveSchedule& sched) {
    double tmin = 0, tmax = 1;
    for (const Job& j : inst.jobs) {
        tmin = std::min(tmin, rat_double(j.r));
        tmax = std::max(tmax, rat_double(j.d));
    }
    Canvas c;
    c.open(tmin, tmax, static_cast<int>(inst.jobs.size()));
    for (const TimeInterval& iv : sched.cover)
        c.band(rat_double(iv.start), rat_double(iv.end), "#e8f1e4");
    c.grid();
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        c.row_label(static_cast<int>(j), inst.jobs[j].id);
        for (const TimeInterval& iv : sched.pieces.at(j))
            c.bar(static_cast<int>(j), rat_double(iv.start), rat_double(iv.end),
                  kPalette[j % 10], inst.jobs[j].id);
    }
    return c.finish();
}

} // namespace chronoshed
