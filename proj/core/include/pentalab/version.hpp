#pragma once

#define PENTALAB_VERSION "0.1.0"
