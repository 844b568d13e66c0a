from functools import wraps
import logging
import sys

from pydantic import ValidationError

from utils.errors import InvalidInputError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2


def describe_validation_error(error):
    """
    Flatten a pydantic ValidationError into one readable line per problem.
    """
    parts = []
    for item in error.errors():
        location = ".".join(str(x) for x in item.get("loc", ())) or "input"
        parts.append(f"{location}: {item.get('msg')}")
    return "; ".join(parts)


def validated_input(f):
    """
    Decorator mapping rejected input to exit code 2 with a message on stderr.
    Any other exception is logged with its traceback and reported as exit 1.
    """

    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ValidationError as e:
            message = describe_validation_error(e)
        except InvalidInputError as e:
            message = str(e)
        except Exception as e:
            logging.error(f"Unexpected error in {f.__name__}: {e}", exc_info=True)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        logging.info(f"Rejected input: {message}")
        print(f"invalid input: {message}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    return decorated_function
