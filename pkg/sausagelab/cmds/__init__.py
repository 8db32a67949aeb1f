# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Commands package for sausagelab CLI."""

from sausagelab.cmds.report import ReportCommand
from sausagelab.cmds.run import RunCommand
from sausagelab.cmds.validate import ValidateCommand

__all__ = ["ReportCommand", "RunCommand", "ValidateCommand"]
