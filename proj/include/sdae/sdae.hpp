#ifndef SDAE_SDAE_HPP
#define SDAE_SDAE_HPP

#include "sdae/core.hpp"
#include "sdae/train.hpp"
#include "sdae/autoencoder.hpp"
#include "sdae/stacked.hpp"
#include "sdae/datagen.hpp"
#include "sdae/windowing.hpp"
#include "sdae/metrics.hpp"
#include "sdae/io.hpp"
#include "sdae/config.hpp"
#include "sdae/harness.hpp"

#endif
