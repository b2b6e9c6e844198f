#ifndef LOOPALG_LOOPALG_HPP
#define LOOPALG_LOOPALG_HPP

#include "loopalg/attach.hpp"
#include "loopalg/bracket_parse.hpp"
#include "loopalg/corpus.hpp"
#include "loopalg/dgl.hpp"
#include "loopalg/field.hpp"
#include "loopalg/lie.hpp"
#include "loopalg/oracle.hpp"
#include "loopalg/problem_io.hpp"
#include "loopalg/report.hpp"
#include "loopalg/series.hpp"
#include "loopalg/slice.hpp"
#include "loopalg/tensor.hpp"
#include "loopalg/word.hpp"

#endif  // LOOPALG_LOOPALG_HPP
