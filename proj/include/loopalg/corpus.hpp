#ifndef LOOPALG_CORPUS_HPP
#define LOOPALG_CORPUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/series.hpp"

namespace loopalg {

// Bundled example problems with their expected results. cmd_selftest runs
// every case and asserts these values; the acceptance suite asserts the
// same numbers directly against the engine.

struct CorpusExpect {
    std::map<int, GradedDims> stage_h0;  // stage index (1-based) -> dims
    std::map<int, GradedDims> stage_k;
    GradedDims final_loop_inverse;       // sparse coeffs of the last stage's inverse series
    long long final_loop_inverse_c0 = 1;
    bool free_ok = true;
    bool semi_inert = true;
    std::optional<int> not_free_at;
    // degree-1 cycles of the root-stage model: d(expr) must vanish and the
    // class must be nonzero
    std::vector<std::string> cycles;
    bool final_relation_free = false;    // final presentation must carry no relations
};

struct CorpusCase {
    std::string name;
    std::string problem_json;
    CorpusExpect expect;
    bool negative = false;
};

inline const std::vector<CorpusCase>& corpus() {
    static const std::vector<CorpusCase> cases = [] {
        std::vector<CorpusCase> v;

        {
            CorpusCase c;
            c.name = "two_cone";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 18,
  "primeSamples": [5, 7],
  "space": {
    "generators": [{"name": "x", "dim": 2}, {"name": "y", "dim": 2}]
  },
  "cells": [
    {"name": "a", "cellDim": 8, "attach": "[[x,y],x]"},
    {"name": "b", "cellDim": 8, "attach": "[[x,y],y]"}
  ],
  "kNames": ["w"]
})";
            c.expect.stage_h0[1] = GradedDims{{2, 2}, {4, 1}};
            c.expect.stage_k[1] = GradedDims{{9, 1}};
            c.expect.final_loop_inverse = GradedDims{{2, -2}, {6, 2}, {8, -1}, {9, -1}};
            c.expect.cycles = {"[a,y] - [b,x]"};
            v.push_back(std::move(c));
        }

        {
            CorpusCase c;
            c.name = "fat_wedge";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 18,
  "primeSamples": [5, 7],
  "space": {
    "generators": [{"name": "x", "dim": 2}, {"name": "y", "dim": 2}, {"name": "z", "dim": 2}]
  },
  "cells": [
    {"name": "a", "cellDim": 6, "attach": "[y,z]"},
    {"name": "b", "cellDim": 6, "attach": "[z,x]"},
    {"name": "c", "cellDim": 6, "attach": "[x,y]"}
  ],
  "kNames": ["w"]
})";
            c.expect.stage_h0[1] = GradedDims{{2, 3}};
            c.expect.stage_k[1] = GradedDims{{7, 1}};
            c.expect.final_loop_inverse = GradedDims{{2, -3}, {4, 3}, {6, -1}, {7, -1}};
            c.expect.cycles = {"[x,a] + [y,b] + [z,c]"};
            v.push_back(std::move(c));
        }

        {
            CorpusCase c;
            c.name = "three_cone_stage2";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 46,
  "primeSamples": [5, 7],
  "space": {
    "generators": [{"name": "w1", "dim": 9}, {"name": "w2", "dim": 9}]
  },
  "cells": [
    {"name": "e", "cellDim": 29, "attach": "[[w1,w2],w1]"},
    {"name": "g", "cellDim": 29, "attach": "[[w1,w2],w2]"}
  ],
  "kNames": ["u"]
})";
            c.expect.stage_h0[1] = GradedDims{{9, 2}, {18, 3}};
            c.expect.stage_k[1] = GradedDims{{37, 1}};
            c.expect.final_loop_inverse = GradedDims{{9, -2}, {27, 2}, {36, -1}, {37, -1}};
            c.expect.cycles = {"[e,w2] + [g,w1]"};
            v.push_back(std::move(c));
        }

        {
            CorpusCase c;
            c.name = "odd_tower";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 16,
  "primeSamples": [5, 7],
  "space": {
    "generators": [{"name": "p1", "dim": 2}, {"name": "p2", "dim": 2}]
  },
  "cells": [
    {"name": "q1", "cellDim": 5, "attach": "0*p1"},
    {"name": "q2", "cellDim": 5, "attach": "0*p2"}
  ],
  "kNames": ["v1", "v2"],
  "stages": [
    {
      "cells": [
        {"name": "r1", "cellDim": 7, "attach": "0*v1"},
        {"name": "r2", "cellDim": 7, "attach": "0*v2"}
      ],
      "kNames": ["s1", "s2"]
    },
    {
      "cells": [
        {"name": "t1", "cellDim": 9, "attach": "0*s1"},
        {"name": "t2", "cellDim": 9, "attach": "0*s2"}
      ],
      "kNames": ["u1", "u2"]
    }
  ]
})";
            c.expect.stage_k[1] = GradedDims{{4, 2}};
            c.expect.stage_k[2] = GradedDims{{6, 2}};
            c.expect.stage_k[3] = GradedDims{{8, 2}};
            c.expect.final_loop_inverse = GradedDims{{2, -2}, {4, -2}, {6, -2}, {8, -2}};
            c.expect.final_relation_free = true;
            v.push_back(std::move(c));
        }

        {
            CorpusCase c;
            c.name = "example4_n2";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 18,
  "primeSamples": [5, 7],
  "space": {
    "generators": [
      {"name": "x1", "dim": 2}, {"name": "y1", "dim": 2},
      {"name": "x2", "dim": 2}, {"name": "y2", "dim": 2}
    ]
  },
  "cells": [
    {"name": "a1", "cellDim": 8, "attach": "[[x1,y1],x1]"},
    {"name": "b1", "cellDim": 8, "attach": "[[x1,y1],y1]"},
    {"name": "a2", "cellDim": 8, "attach": "[[x2,y2],x2]"},
    {"name": "b2", "cellDim": 8, "attach": "[[x2,y2],y2]"}
  ],
  "kNames": ["w1", "w2"],
  "stages": [
    {
      "cells": [
        {"name": "e", "cellDim": 29, "attach": "[[w1,w2],w1]"},
        {"name": "g", "cellDim": 29, "attach": "[[w1,w2],w2]"}
      ],
      "kNames": ["u"],
      "cutoff": 46
    }
  ]
})";
            c.expect.stage_k[1] = GradedDims{{9, 2}};
            c.expect.stage_k[2] = GradedDims{{37, 1}};
            c.expect.final_loop_inverse =
                GradedDims{{2, -4}, {6, 4}, {8, -2}, {9, -2}, {27, 2}, {36, -1}, {37, -1}};
            c.expect.cycles = {"[a1,y1] - [b1,x1]", "[a2,y2] - [b2,x2]"};
            v.push_back(std::move(c));
        }

        {
            CorpusCase c;
            c.name = "nonfree_abelian";
            c.problem_json = R"({
  "field": "Q",
  "cutoff": 12,
  "primeSamples": [5, 7],
  "space": {
    "generators": [{"name": "x", "dim": 2}, {"name": "y", "dim": 2}],
    "relations": ["[[x,y],x]", "[[x,y],y]"]
  },
  "cells": [
    {"name": "cx", "cellDim": 4, "attach": "x"},
    {"name": "cy", "cellDim": 4, "attach": "y"}
  ]
})";
            c.negative = true;
            c.expect.free_ok = false;
            c.expect.semi_inert = false;
            c.expect.not_free_at = 6;
            v.push_back(std::move(c));
        }

        return v;
    }();
    return cases;
}

}  // namespace loopalg

#endif  // LOOPALG_CORPUS_HPP
