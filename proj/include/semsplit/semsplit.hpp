#pragma once

#include "semsplit/core.hpp"
#include "semsplit/error.hpp"
#include "semsplit/factorize.hpp"
#include "semsplit/io.hpp"
#include "semsplit/logic.hpp"
#include "semsplit/partition.hpp"
#include "semsplit/recoding.hpp"
#include "semsplit/revision.hpp"
