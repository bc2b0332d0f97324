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
"""
Feedback helpers shared by every :mod:`retinextoolbox` sub-package.
"""
import sys


def push_feedback(msg, feedback=None):
    """
    Print a message for the user.

    Parameters
    ----------
    msg : str.
        The message.
    feedback : None or file-like, optional (default=None).
        Where to write. None writes to standard output.
    """
    stream = sys.stdout if feedback is None else feedback
    print(msg, file=stream, flush=True)


class ProgressBar:

    def __init__(self, total, message='', length=40):
        """
        Text progress bar used by the loops over illumination conditions and models.

        Parameters
        ----------
        total : int
            Total number of steps.
        message : str
            Custom message to show before the progress bar.
        length : int.
            Length of the bar.
        """
        self.total = max(int(total), 1)
        self.message = message
        self.length = length
        self.position = 0
        self.last_percent = None

    def add_position(self, value=False):
        """
        Add progress to the bar.

        Parameters
        ----------
        value : int or False.
            If False, moves forward by one step. Otherwise moves to `value`.
        """
        if value is False:
            self.position += 1
        else:
            self.position = value
        self.position = min(self.position, self.total)

        percent = int(self.position / self.total * 100)
        if percent != self.last_percent:
            self.last_percent = percent
            self._print_bar(percent)

    def _print_bar(self, percent):
        n_hash = int(self.length * self.position / self.total)
        end = '\n' if percent == 100 else '\r'
        print('\r{} [{}{}]{}%'.format(self.message,
                                      '#' * n_hash,
                                      '.' * (self.length - n_hash),
                                      percent),
              end=end, flush=True)
