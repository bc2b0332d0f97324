#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import sys

from .pipeline import main

sys.exit(main())
