#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# =============================================================================
#  ____      _   _                 _____           _ ____
# |  _ \ ___| |_(_)_ __   _____  _|_   _|__   ___ | | __ )  _____  __
# | |_) / _ \ __| | '_ \ / _ \ \/ / | |/ _ \ / _ \| |  _ \ / _ \ \/ /
# |  _ <  __/ |_| | | | |  __/>  <  | | (_) | (_) | | |_) | (_) >  <
# |_| \_\___|\__|_|_| |_|\___/_/\_\ |_|\___/ \___/|_|____/ \___/_/\_\
#
# Retina-inspired color constancy toolbox.
# =============================================================================
__version__ = "0.1.0"

from . import imagecore, encoding, spatialfilter, ccmodels, colorspace, metrics, scenesim, pipeline
