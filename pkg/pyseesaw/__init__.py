# -*- coding: utf-8 -*-

from . import cli, config, consts, exceptions, fem, mechanics, optics, plotting, report, search
