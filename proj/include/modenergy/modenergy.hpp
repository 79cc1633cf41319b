#pragma once

#include "modenergy/channel.hpp"
#include "modenergy/energy.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/frame.hpp"
#include "modenergy/mc_oracle.hpp"
#include "modenergy/numeric.hpp"
#include "modenergy/optimizer.hpp"
#include "modenergy/scenario.hpp"
#include "modenergy/schemes.hpp"
