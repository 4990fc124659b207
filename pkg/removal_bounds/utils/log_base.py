import logging
# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

class ColoredFormatter(logging.Formatter):
    COLORS = {
        'DEBUG': '\033[94m',  # Blue
        'INFO': '\033[92m',  # Green
        'WARNING': '\033[93m',  # Yellow
        'ERROR': '\033[91m',  # Red
        'CRITICAL': '\033[95m',  # Magenta
        'RESET': '\033[0m',  # Reset
    }

    def __init__(self, fmt=None, use_color: bool = True):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record):
        message = super().format(record)
        if not self.use_color:
            return message
        color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        return color + message + self.COLORS['RESET']


def set_log_color_level(level, stream=None):
    """Install a colored console handler on the root logger.

    Calling it again only updates the level. Records go to stderr unless another stream
    is given, so stdout stays free for machine-readable output.

    Args:
        level: A logging level name or number.
        stream: Optional stream for the handler.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            raise ValueError(f"Unknown log level: {level}")

    logger = logging.getLogger()
    logger.setLevel(level)

    handler = next((h for h in logger.handlers if isinstance(getattr(h, 'formatter', None), ColoredFormatter)), None)
    if handler is None:
        # Create console handler
        handler = logging.StreamHandler(stream)
        use_color = bool(getattr(handler.stream, 'isatty', lambda: False)())

        # Create formatter and add it to the handlers
        formatter = ColoredFormatter('%(asctime)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s',
                                     use_color=use_color)
        handler.setFormatter(formatter)

        # Add the handlers to the logger
        logger.addHandler(handler)

    handler.setLevel(level)
    return logger
