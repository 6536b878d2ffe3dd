#!/usr/bin/env python3
"""
Optimistic Limit Launcher
-------------------------
This script launches the optlim command-line tool.
"""
import sys
import os
import traceback

def main():
    """Main entry point for the tool"""
    try:
        # Add the current directory to Python's module search path
        current_dir = os.path.dirname(os.path.abspath(__file__))
        if current_dir not in sys.path:
            sys.path.insert(0, current_dir)
        
        from src.main import main as cli_main
        return cli_main()
        
    except ImportError as e:
        # Handle import errors specifically
        error_msg = f"Import Error: {str(e)}\n\n"
        error_msg += "This is likely due to a missing dependency or incorrect import path.\n"
        error_msg += "Please ensure you have installed all required packages:\n"
        error_msg += "  - numpy\n  - networkx\n  - mpmath\n\n"
        error_msg += "Detailed error information:\n"
        error_msg += traceback.format_exc()
        
        print(error_msg, file=sys.stderr)
        return 1
        
    except Exception as e:
        # Handle other exceptions
        error_msg = f"Error: {str(e)}\n\n"
        error_msg += "An unexpected error occurred.\n\n"
        error_msg += "Detailed error information:\n"
        error_msg += traceback.format_exc()
        
        print(error_msg, file=sys.stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
