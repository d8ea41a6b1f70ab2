// Bare-bones line charts. CSV stays the real output; this is for eyeballing.
#pragma once

#include <string>
#include <vector>

namespace rabiberry::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed{false};
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// Panels are laid out side by side in a fixed 800x600 viewBox.
std::string render_svg(const std::vector<Panel>& panels);

} // namespace rabiberry::cli
